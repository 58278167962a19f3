#include "arena/model_json.hpp"

namespace arena {

nlohmann::ordered_json to_json(const ProphetLiteParams& p) {
    nlohmann::ordered_json j;
    j["kind"] = "prophet_lite";
    j["k"] = p.k;
    j["m"] = p.m;
    j["changepoints"] = p.changepoints;
    j["deltas"] = p.deltas;
    j["fourier_a"] = p.fourier_a;
    j["fourier_b"] = p.fourier_b;
    j["holiday_effects"] = nlohmann::ordered_json::object();
    for (const auto& [name, effect] : p.holiday_effects) j["holiday_effects"][name] = effect;
    j["beta_price"] = p.beta_price;
    j["price_mean"] = p.price_mean;
    j["price_scale"] = p.price_scale;
    j["train_origin"] = p.train_origin.to_string();
    j["n_train"] = p.n_train;
    j["period"] = p.period;
    return j;
}

nlohmann::ordered_json to_json(const GlobalARParams& p) {
    nlohmann::ordered_json j;
    j["kind"] = "global_ar";
    j["lags"] = p.lags;
    j["weights"] = p.weights;
    j["scales"] = nlohmann::ordered_json::array();
    for (const auto& [key, scale] : p.scales) {
        j["scales"].push_back({{"item", key.item}, {"org", key.org}, {"scale", scale},
                               {"price_ref", p.price_refs.at(key)}});
    }
    j["quantile"] = p.quantile ? nlohmann::ordered_json(*p.quantile) : nlohmann::ordered_json(nullptr);
    j["training_rows"] = p.training_rows;
    return j;
}

nlohmann::ordered_json to_json(const ForecasterSpec& spec) {
    nlohmann::ordered_json j;
    j["name"] = spec.name();
    j["kind"] = to_string(spec.kind());
    j["seed"] = spec.seed();
    j["hyperparameters"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : spec.hyperparameters()) j["hyperparameters"][k] = v;
    return j;
}

}  // namespace arena
