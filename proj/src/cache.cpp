#include "treenergy/cache.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "treenergy/version.hpp"

namespace treenergy {

namespace {

std::string format_tol(double tolerance) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", tolerance);
    return buf;
}

std::string fnv1a_hex(const std::string& s) {
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

}  // namespace

EnergyCache::EnergyCache(std::filesystem::path dir) : dir_(std::move(dir)), enabled_(true) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        std::cerr << "warning: cannot create cache directory " << dir_ << ": " << ec.message()
                  << "; caching disabled\n";
        enabled_ = false;
    }
}

std::filesystem::path EnergyCache::entry_path(const CanonicalCode& code, EnergyMethod method,
                                              double tolerance) const {
    std::string key = code.code + "\n" + kEngineVersion + "\n" + to_string(method) + "\n" +
                      format_tol(tolerance);
    return dir_ / (fnv1a_hex(key) + ".json");
}

std::optional<EnergyResult> EnergyCache::lookup(const CanonicalCode& code, EnergyMethod method,
                                                double tolerance) const {
    if (!enabled_) return std::nullopt;
    auto path = entry_path(code, method, tolerance);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("engine_version").get<std::string>() != kEngineVersion) return std::nullopt;
        if (j.at("code").get<std::string>() != code.code) return std::nullopt;
        if (j.at("method").get<std::string>() != to_string(method)) return std::nullopt;
        if (j.at("tolerance").get<std::string>() != format_tol(tolerance)) return std::nullopt;
        EnergyResult r;
        r.value = j.at("value").get<double>();
        r.error_bound = j.at("error_bound").get<double>();
        r.method = method;
        return r;
    } catch (const std::exception& e) {
        std::cerr << "warning: ignoring corrupt cache entry " << path << ": " << e.what() << "\n";
        return std::nullopt;
    }
}

void EnergyCache::store(const CanonicalCode& code, EnergyMethod method, double tolerance,
                        const EnergyResult& result) const {
    if (!enabled_) return;
    nlohmann::ordered_json j;
    j["engine_version"] = kEngineVersion;
    j["code"] = code.code;
    j["method"] = to_string(method);
    j["tolerance"] = format_tol(tolerance);
    j["value"] = result.value;
    j["error_bound"] = result.error_bound;

    auto path = entry_path(code, method, tolerance);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            std::cerr << "warning: cannot write cache entry " << tmp << "\n";
            return;
        }
        out << j.dump() << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::cerr << "warning: cannot finalize cache entry " << path << ": " << ec.message() << "\n";
        std::filesystem::remove(tmp, ec);
    }
}

}  // namespace treenergy
