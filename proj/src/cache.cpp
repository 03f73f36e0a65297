#include "slopelab/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "slopelab/errors.hpp"

namespace slopelab {

namespace fs = std::filesystem;
using nlohmann::json;

SeriesCache::SeriesCache(std::string root) : root_(std::move(root)) {
    if (root_.empty()) {
        const char* env = std::getenv("SLOPELAB_CACHE");
        root_ = (env && *env) ? env : "./.slopelab-cache";
    }
}

std::string SeriesCache::path_for(const SeriesKey& key) const {
    std::ostringstream name;
    name << "p" << key.p << "_k" << key.k << "_b" << key.base_weight << "_i" << key.i_max
         << "_q" << key.q_prec << "_M" << key.p_prec << "_" << key.algorithm << ".json";
    return (fs::path(root_) / name.str()).string();
}

std::optional<StoredSeries> SeriesCache::load(const SeriesKey& key) const {
    std::ifstream in(path_for(key));
    if (!in) return std::nullopt;
    json j;
    try {
        in >> j;
        StoredSeries s;
        s.key = key;
        if (j.at("schema_version").get<long>() != 1) return std::nullopt;
        if (j.at("p").get<unsigned long>() != key.p) return std::nullopt;
        if (j.at("N").get<long>() != 1) return std::nullopt;
        if (j.at("k").get<long long>() != key.k) return std::nullopt;
        if (j.at("base_weight").get<long>() != key.base_weight) return std::nullopt;
        if (j.at("i_max").get<long>() != key.i_max) return std::nullopt;
        if (j.at("q_prec").get<long>() != key.q_prec) return std::nullopt;
        if (j.at("p_prec").get<long>() != key.p_prec) return std::nullopt;
        if (j.at("algorithm").get<std::string>() != key.algorithm) return std::nullopt;
        for (const auto& c : j.at("coeffs")) {
            s.coeffs.emplace_back(c.get<std::string>());
        }
        s.certified_count = j.at("certified_count").get<long>();
        s.certified_residues = j.at("certified_residues").get<long>();
        s.compared = j.at("compared").get<bool>();
        if (s.certified_count < 0 || s.certified_count > (long)s.coeffs.size()) return std::nullopt;
        if (s.certified_residues < 0 || s.certified_residues > s.certified_count) return std::nullopt;
        return s;
    } catch (const std::exception&) {
        /* unreadable entries are treated as absent and rebuilt */
        return std::nullopt;
    }
}

void SeriesCache::store(const StoredSeries& s) const {
    json j;
    j["schema_version"] = 1;
    j["p"] = s.key.p;
    j["N"] = 1;
    j["k"] = s.key.k;
    j["base_weight"] = s.key.base_weight;
    j["i_max"] = s.key.i_max;
    j["q_prec"] = s.key.q_prec;
    j["p_prec"] = s.key.p_prec;
    j["algorithm"] = s.key.algorithm;
    json coeffs = json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(c.get_str());
    j["coeffs"] = std::move(coeffs);
    j["certified_count"] = s.certified_count;
    j["certified_residues"] = s.certified_residues;
    j["compared"] = s.compared;

    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) fail(errc::cache_io, "cannot create cache directory " + root_);

    std::random_device rd;
    std::ostringstream tmp_name;
    tmp_name << ".tmp-" << rd() << "-" << rd();
    fs::path tmp = fs::path(root_) / tmp_name.str();
    {
        std::ofstream out(tmp);
        if (!out) fail(errc::cache_io, "cannot open cache temp file " + tmp.string());
        out << j.dump(1) << "\n";
        if (!out) fail(errc::cache_io, "cannot write cache temp file " + tmp.string());
    }
    fs::rename(tmp, path_for(s.key), ec);
    if (ec) {
        fs::remove(tmp);
        fail(errc::cache_io, "cannot publish cache entry for " + path_for(s.key));
    }
}

} // namespace slopelab
