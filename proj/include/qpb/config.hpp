#pragma once

#include <map>
#include <string>
#include <vector>

namespace qpb {

/// Engine configuration: degree windows, exponent bounds, step budgets and
/// q-evaluation points. Loaded from a key = value file with command-line
/// overrides; defaults are baked in and printed in every report header.
struct Config {
    long stepBudget = 1000000;
    int axiomDegree = 4;        // Hopf axiom window
    int coactionDegree = 3;     // comodule axiom window
    int windowDegree = 3;       // generic monomial window
    int exponentBound = 3;
    int equalizerDegree = 6;    // O_M gluing window
    int separationDegree = 4;   // F_G separation window
    int baseFormsDegree = 2;    // horizontal/coinvariant forms window
    int threads = 0;            // 0 = library default; 1 = serial reference
    std::vector<long> qPoints = {2, 3, 5};

    void set(const std::string& key, const std::string& value);
    static Config fromFile(const std::string& path);
    /// Applies QPBCALC_CONFIG when set and no explicit path is given.
    static Config load(const std::string& explicitPath);
    std::string header() const;
};

}  // namespace qpb
