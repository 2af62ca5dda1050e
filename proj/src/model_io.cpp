#include "gabp/model_io.hpp"

#include <fstream>

#include <json.hpp>

#include "gabp/error.hpp"

namespace gabp::model_io {

namespace {
constexpr const char* kFormat = "gabp-model-v1";
}

Model from_network(const net::Network& n, const features::Dataset& d,
                   const features::FeatureColumns& cols, int vol_window, double z_threshold) {
    Model m;
    m.shape = n.shape;
    m.genes = net::encode(n).genes;
    m.hidden_activation = n.hidden_activation;
    m.feature_names = d.feature_names;
    m.norm = d.norm;
    m.columns = cols;
    m.vol_window = vol_window;
    m.z_threshold = z_threshold;
    return m;
}

net::Network to_network(const Model& m) {
    net::Chromosome c;
    c.genes = m.genes;
    return net::decode(c, m.shape, m.hidden_activation);
}

void save(const std::filesystem::path& path, const Model& m) {
    nlohmann::json j;
    j["format"] = kFormat;
    j["shape"] = {{"inputs", m.shape.inputs}, {"hidden", m.shape.hidden},
                  {"outputs", m.shape.outputs}};
    j["genes"] = std::vector<double>(m.genes.begin(), m.genes.end());
    j["hidden_activation"] = net::activation_name(m.hidden_activation);
    j["output_activation"] = "identity";
    j["feature_names"] = m.feature_names;
    nlohmann::json norm = nlohmann::json::array();
    for (std::size_t i = 0; i < m.norm.size(); ++i)
        norm.push_back({{"name", m.feature_names[i]}, {"min", m.norm[i].min},
                        {"max", m.norm[i].max}});
    j["norm_params"] = norm;
    j["columns"] = {{"close", m.columns.close},   {"volume", m.columns.volume},
                    {"sse50", m.columns.sse50},   {"bond3m", m.columns.bond3m},
                    {"bond6m", m.columns.bond6m}, {"fx", m.columns.fx}};
    j["vol_window"] = m.vol_window;
    j["z_threshold"] = m.z_threshold;

    std::ofstream out(path);
    if (!out) fail(Errc::BadConfig, "model: cannot write " + path.string());
    out << j.dump(2) << '\n';
}

Model load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::ModelParseError, "model: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("format").get<std::string>() != kFormat)
            fail(Errc::ModelParseError, "model: unsupported format in " + path.string());

        Model m;
        m.shape.inputs = j.at("shape").at("inputs").get<Eigen::Index>();
        m.shape.hidden = j.at("shape").at("hidden").get<Eigen::Index>();
        m.shape.outputs = j.at("shape").at("outputs").get<Eigen::Index>();
        const auto genes = j.at("genes").get<std::vector<double>>();
        m.genes = Eigen::Map<const Eigen::VectorXd>(genes.data(),
                                                    static_cast<Eigen::Index>(genes.size()));
        if (m.genes.size() != m.shape.gene_count())
            fail(Errc::ModelParseError, "model: gene count does not match shape");
        m.hidden_activation =
            net::activation_from_name(j.at("hidden_activation").get<std::string>());
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        for (const auto& p : j.at("norm_params"))
            m.norm.push_back({p.at("min").get<double>(), p.at("max").get<double>()});
        if (m.norm.size() != m.feature_names.size())
            fail(Errc::ModelParseError, "model: norm_params do not match feature_names");
        const auto& cols = j.at("columns");
        m.columns.close = cols.at("close").get<std::string>();
        m.columns.volume = cols.at("volume").get<std::string>();
        m.columns.sse50 = cols.at("sse50").get<std::string>();
        m.columns.bond3m = cols.at("bond3m").get<std::string>();
        m.columns.bond6m = cols.at("bond6m").get<std::string>();
        m.columns.fx = cols.at("fx").get<std::string>();
        m.vol_window = j.at("vol_window").get<int>();
        m.z_threshold = j.at("z_threshold").get<double>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::ModelParseError, "model: " + path.string() + ": " + e.what());
    } catch (const Error& e) {
        if (e.code() == Errc::BadConfig)
            fail(Errc::ModelParseError, std::string("model: ") + e.what());
        throw;
    }
}

} // namespace gabp::model_io
