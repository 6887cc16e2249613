#include "measaudit/synth.hpp"

#include "measaudit/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace measaudit {

Dataset generate_synthetic(const SynthSpec& spec, const RngStream& rng) {
    if (spec.n_rows < 2) throw InvalidSpecError("n_rows must be >= 2");
    if (spec.shift_row <= 0 || spec.shift_row >= spec.n_rows)
        throw InvalidSpecError("shift_row must lie strictly inside (0, n_rows)");
    if (spec.channels.empty()) throw InvalidSpecError("at least one channel required");
    if (spec.target_noise_std < 0.0 || spec.latent.ar_noise_std < 0.0)
        throw InvalidSpecError("noise stds must be non-negative");
    std::set<std::string> names;
    for (const auto& c : spec.channels) {
        if (c.noise_std < 0.0) throw InvalidSpecError("noise stds must be non-negative");
        if (!names.insert(c.name).second)
            throw InvalidSpecError("duplicate channel name: " + c.name);
    }
    if (names.count(spec.target_name))
        throw InvalidSpecError("target name collides with a channel name");
    if (!(spec.latent.period > 0.0)) throw InvalidSpecError("period must be positive");

    const Eigen::Index n = spec.n_rows;

    // latent z_t = amplitude * sin(2*pi*t/period) + AR(1) term
    Eigen::VectorXd z(n);
    RngStream latent_rng = rng.substream("latent");
    double ar = 0.0;
    for (Eigen::Index t = 0; t < n; ++t) {
        if (spec.latent.ar_noise_std > 0.0)
            ar = spec.latent.ar_coeff * ar +
                 latent_rng.gaussian(0.0, spec.latent.ar_noise_std);
        z[t] = spec.latent.amplitude *
                   std::sin(2.0 * M_PI * static_cast<double>(t) / spec.latent.period) +
               ar;
    }

    Dataset out;
    out.values.resize(n, static_cast<Eigen::Index>(spec.channels.size()) + 1);
    for (size_t j = 0; j < spec.channels.size(); ++j) {
        const auto& ch = spec.channels[j];
        RngStream ch_rng = rng.substream("channel").substream(ch.name);
        for (Eigen::Index t = 0; t < n; ++t) {
            const double loading =
                t < spec.shift_row ? ch.loading_train : ch.loading_shift;
            double v = loading * z[t] + ch.bias;
            if (ch.noise_std > 0.0) v += ch_rng.gaussian(0.0, ch.noise_std);
            out.values(t, static_cast<Eigen::Index>(j)) = v;
        }
        out.column_names.push_back(ch.name);
    }

    RngStream target_rng = rng.substream("target");
    for (Eigen::Index t = 0; t < n; ++t) {
        double v = z[t];
        if (spec.target_noise_std > 0.0)
            v += target_rng.gaussian(0.0, spec.target_noise_std);
        out.values(t, out.values.cols() - 1) = v;
    }
    out.column_names.push_back(spec.target_name);
    return out;
}

SynthSpec parse_synth_spec(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpecError(std::string("synth spec is not valid JSON: ") + e.what());
    }
    try {
        SynthSpec spec;
        spec.n_rows = doc.at("n_rows").get<Eigen::Index>();
        spec.shift_row = doc.at("shift_row").get<Eigen::Index>();
        spec.target_noise_std = doc.value("target_noise_std", 0.0);
        spec.target_name = doc.value("target_name", std::string("z"));
        const auto& lat = doc.at("latent");
        spec.latent.amplitude = lat.value("amplitude", 1.0);
        spec.latent.period = lat.value("period", 24.0);
        spec.latent.ar_coeff = lat.value("ar_coeff", 0.0);
        spec.latent.ar_noise_std = lat.value("ar_noise_std", 0.0);
        for (const auto& c : doc.at("channels")) {
            SynthChannel ch;
            ch.name = c.at("name").get<std::string>();
            ch.loading_train = c.value("loading_train", 1.0);
            ch.loading_shift = c.value("loading_shift", ch.loading_train);
            ch.bias = c.value("bias", 0.0);
            ch.noise_std = c.value("noise_std", 0.0);
            spec.channels.push_back(std::move(ch));
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpecError(std::string("synth spec field error: ") + e.what());
    }
}

void write_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (size_t j = 0; j < data.column_names.size(); ++j) {
        if (j) out << ',';
        out << data.column_names[j];
    }
    out << '\n';
    char buf[40];
    for (Eigen::Index i = 0; i < data.n_rows(); ++i) {
        for (Eigen::Index j = 0; j < data.n_cols(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", data.values(i, j));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace measaudit
