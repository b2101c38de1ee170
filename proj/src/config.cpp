#include "qpb/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qpb/errors.hpp"

namespace qpb {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
    auto asLong = [&] { return std::stol(value); };
    auto asInt = [&] { return std::stoi(value); };
    if (key == "step_budget")
        stepBudget = asLong();
    else if (key == "axiom_degree")
        axiomDegree = asInt();
    else if (key == "coaction_degree")
        coactionDegree = asInt();
    else if (key == "window_degree")
        windowDegree = asInt();
    else if (key == "exponent_bound")
        exponentBound = asInt();
    else if (key == "equalizer_degree")
        equalizerDegree = asInt();
    else if (key == "separation_degree")
        separationDegree = asInt();
    else if (key == "base_forms_degree")
        baseFormsDegree = asInt();
    else if (key == "threads")
        threads = asInt();
    else if (key == "q_points") {
        qPoints.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!trim(tok).empty()) qPoints.push_back(std::stol(trim(tok)));
    } else {
        throw Error("unknown config key: " + key);
    }
}

Config Config::fromFile(const std::string& path) {
    Config cfg;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) throw Error("config line without '=': " + t);
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

Config Config::load(const std::string& explicitPath) {
    if (!explicitPath.empty()) return fromFile(explicitPath);
    if (const char* env = std::getenv("QPBCALC_CONFIG")) return fromFile(env);
    return Config{};
}

std::string Config::header() const {
    std::ostringstream os;
    os << "step_budget=" << stepBudget << " axiom_degree=" << axiomDegree
       << " coaction_degree=" << coactionDegree << " window_degree=" << windowDegree
       << " exponent_bound=" << exponentBound << " equalizer_degree=" << equalizerDegree
       << " separation_degree=" << separationDegree << " base_forms_degree=" << baseFormsDegree
       << " threads=" << threads << " q_points=";
    for (std::size_t i = 0; i < qPoints.size(); ++i) os << (i ? "," : "") << qPoints[i];
    return os.str();
}

}  // namespace qpb
