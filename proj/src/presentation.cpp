#include "qpb/presentation.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "qpb/element.hpp"

#ifdef QPB_HAVE_OPENMP
#include <omp.h>
#endif

namespace qpb {

int Presentation::generatorIndex(const std::string& name) const {
    for (int i = 0; i < generatorCount(); ++i)
        if (gens_[static_cast<std::size_t>(i)].name == name) return i;
    return -1;
}

std::optional<std::pair<int, int>> Presentation::letterByName(const std::string& name) const {
    for (int i = 0; i < generatorCount(); ++i) {
        const auto& g = gens_[static_cast<std::size_t>(i)];
        if (g.name == name) return std::pair{i, 1};
        if (g.invertible && !g.invName.empty() && g.invName == name) return std::pair{i, -1};
    }
    return std::nullopt;
}

int Presentation::addGenerator(GeneratorInfo info) {
    gens_.push_back(std::move(info));
    return generatorCount() - 1;
}

void Presentation::addRule(RuleKey key, RawTerms rhs) { rules_[key] = std::move(rhs); }

void Presentation::addSwapRule(int hiGen, int loGen, const RatQ& c) {
    if (hiGen <= loGen) throw Error("addSwapRule: first generator must be larger in the order");
    auto mk = [&](int sHi, int sLo, const RatQ& coef) {
        Monomial m;
        m.factors = {{loGen, sLo}, {hiGen, sHi}};
        RawTerms rhs;
        rhs[m] = coef;
        addRule(RuleKey{hiGen, sHi, loGen, sLo}, std::move(rhs));
    };
    const bool hi = gens_[static_cast<std::size_t>(hiGen)].invertible;
    const bool li = gens_[static_cast<std::size_t>(loGen)].invertible;
    mk(1, 1, c);
    if (li) mk(1, -1, c.inv());
    if (hi) mk(-1, 1, c.inv());
    if (hi && li) mk(-1, -1, c);
}

void Presentation::addRelation(DefiningRelation rel) { relations_.push_back(std::move(rel)); }

const HopfData& Presentation::hopf() const {
    if (!hopf_) throw NoHopfData(name_);
    return *hopf_;
}

namespace {

/// Merges adjacent letters of the same generator; drops zero exponents.
Word mergeWord(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (l.exp == 0) continue;
        if (!out.empty() && out.back().gen == l.gen) {
            out.back().exp += l.exp;
            if (out.back().exp == 0) out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

int sgn(int x) { return x > 0 ? 1 : -1; }

}  // namespace

RawTerms Presentation::normalizeWord(const Word& w0, const RatQ& coef) const {
    RawTerms result;
    if (coef.isZero()) return result;
    std::vector<std::pair<Word, RatQ>> work;
    work.push_back({mergeWord(w0), coef});
    long steps = 0;
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        if (++steps > stepBudget_) throw StepLimitExceeded(name_);

        bool reduced = false;
        for (std::size_t i = 0; i < w.size() && !reduced; ++i) {
            const Letter& a = w[i];
            // unary elimination rule?
            auto uit = rules_.find(RuleKey{a.gen, sgn(a.exp)});
            if (uit != rules_.end()) {
                for (const auto& [mon, rc] : uit->second) {
                    Word nw(w.begin(), w.begin() + static_cast<long>(i));
                    Word tail = mon.word();
                    nw.insert(nw.end(), tail.begin(), tail.end());
                    if (a.exp - sgn(a.exp) != 0) nw.push_back({a.gen, a.exp - sgn(a.exp)});
                    nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 1, w.end());
                    work.push_back({mergeWord(nw), c * rc});
                }
                reduced = true;
                break;
            }
            if (i + 1 >= w.size()) break;
            const Letter& b = w[i + 1];
            auto bit = rules_.find(RuleKey{a.gen, sgn(a.exp), b.gen, sgn(b.exp)});
            if (bit != rules_.end()) {
                for (const auto& [mon, rc] : bit->second) {
                    Word nw(w.begin(), w.begin() + static_cast<long>(i));
                    if (a.exp - sgn(a.exp) != 0) nw.push_back({a.gen, a.exp - sgn(a.exp)});
                    Word tail = mon.word();
                    nw.insert(nw.end(), tail.begin(), tail.end());
                    if (b.exp - sgn(b.exp) != 0) nw.push_back({b.gen, b.exp - sgn(b.exp)});
                    nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
                    work.push_back({mergeWord(nw), c * rc});
                }
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            Monomial m;
            for (const auto& l : w) {
                if (l.exp < 0 && !gens_[static_cast<std::size_t>(l.gen)].invertible)
                    throw Error("negative exponent on non-invertible generator " +
                                gens_[static_cast<std::size_t>(l.gen)].name);
                m.factors.push_back({l.gen, l.exp});
            }
            auto it = result.find(m);
            if (it == result.end()) {
                result.emplace(std::move(m), c);
            } else {
                it->second += c;
                if (it->second.isZero()) result.erase(it);
            }
        }
    }
    return result;
}

RawTerms Presentation::normalizeTerms(const RawTerms& terms) const {
    RawTerms out;
    for (const auto& [m, c] : terms) {
        RawTerms part = normalizeWord(m.word(), c);
        for (const auto& [m2, c2] : part) {
            auto it = out.find(m2);
            if (it == out.end()) {
                out.emplace(m2, c2);
            } else {
                it->second += c2;
                if (it->second.isZero()) out.erase(it);
            }
        }
    }
    return out;
}

bool Presentation::isNormal(const Monomial& m) const {
    const auto& f = m.factors;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].second < 0 && !gens_[static_cast<std::size_t>(f[i].first)].invertible) return false;
        if (rules_.count(RuleKey{f[i].first, sgn(f[i].second)})) return false;
        if (i + 1 < f.size() &&
            rules_.count(RuleKey{f[i].first, sgn(f[i].second), f[i + 1].first, sgn(f[i + 1].second)}))
            return false;
    }
    return true;
}

int Presentation::degreeOf(const Monomial& m) const {
    int d = 0;
    for (const auto& [g, e] : m.factors) d += gens_[static_cast<std::size_t>(g)].degree * e;
    return d;
}

int Presentation::weightOf(const Monomial& m) const {
    int d = 0;
    for (const auto& [g, e] : m.factors) d += gens_[static_cast<std::size_t>(g)].weight * e;
    return d;
}

namespace {

void enumerateExponents(const Presentation& p, int gi, int bound, Monomial& cur,
                        const std::function<void(const Monomial&)>& sink) {
    if (gi == p.generatorCount()) {
        sink(cur);
        return;
    }
    const auto& g = p.gen(gi);
    int lo = g.invertible ? -bound : 0;
    for (int e = lo; e <= bound; ++e) {
        if (e != 0) cur.factors.push_back({gi, e});
        enumerateExponents(p, gi + 1, bound, cur, sink);
        if (e != 0) cur.factors.pop_back();
    }
}

}  // namespace

std::vector<Monomial> Presentation::basisOfDegree(int degree, int bound) const {
    std::vector<Monomial> out;
    Monomial cur;
    enumerateExponents(*this, 0, bound, cur, [&](const Monomial& m) {
        if (degreeOf(m) == degree && isNormal(m)) out.push_back(m);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> Presentation::monomialWindow(int maxAbs, int bound, std::optional<int> weight) const {
    std::vector<Monomial> out;
    Monomial cur;
    enumerateExponents(*this, 0, bound, cur, [&](const Monomial& m) {
        int abs = 0;
        for (const auto& [g, e] : m.factors) abs += e > 0 ? e : -e;
        if (abs > maxAbs) return;
        if (weight && weightOf(m) != *weight) return;
        if (isNormal(m)) out.push_back(m);
    });
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string wordToString(const Presentation& p, const Word& w) {
    std::string s;
    for (const auto& l : w) {
        if (!s.empty()) s += "*";
        const auto& g = p.gen(l.gen);
        s += l.exp > 0 ? g.name : g.invName.empty() ? g.name + "^-1" : g.invName;
        int e = l.exp > 0 ? l.exp : -l.exp;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

/// All distinct single-step reducts of w (fully normalized afterwards).
std::vector<RawTerms> oneStepReducts(const Presentation& p, const Word& w) {
    std::vector<RawTerms> out;
    const auto& rules = p.rules();
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto tryRule = [&](const RuleKey& key, bool unary) {
            auto it = rules.find(key);
            if (it == rules.end()) return;
            RawTerms combined;
            for (const auto& [mon, rc] : it->second) {
                Word nw(w.begin(), w.begin() + static_cast<long>(i));
                Word tail = mon.word();
                nw.insert(nw.end(), tail.begin(), tail.end());
                nw.insert(nw.end(), w.begin() + static_cast<long>(i) + (unary ? 1 : 2), w.end());
                for (auto& [m2, c2] : p.normalizeWord(nw, rc)) {
                    auto jt = combined.find(m2);
                    if (jt == combined.end())
                        combined.emplace(m2, c2);
                    else {
                        jt->second += c2;
                        if (jt->second.isZero()) combined.erase(jt);
                    }
                }
            }
            out.push_back(std::move(combined));
        };
        tryRule(RuleKey{w[i].gen, w[i].exp}, true);
        if (i + 1 < w.size()) tryRule(RuleKey{w[i].gen, w[i].exp, w[i + 1].gen, w[i + 1].exp}, false);
    }
    return out;
}

}  // namespace

ConfluenceReport checkConfluence(const PresPtr& p, int maxOverlapLen, int threads) {
    // Unit-letter alphabet.
    std::vector<Letter> alphabet;
    for (int g = 0; g < p->generatorCount(); ++g) {
        alphabet.push_back({g, 1});
        if (p->gen(g).invertible) alphabet.push_back({g, -1});
    }
    std::vector<Word> words;
    std::vector<Word> frontier{Word{}};
    for (int len = 1; len <= maxOverlapLen; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (const auto& l : alphabet) {
                Word nw = w;
                nw.push_back(l);
                next.push_back(nw);
                if (len >= 2) words.push_back(nw);
            }
        frontier = std::move(next);
    }

    ConfluenceReport report;
    report.wordsChecked = static_cast<long>(words.size());
    std::vector<std::vector<std::string>> local(1);
#ifdef QPB_HAVE_OPENMP
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
    local.assign(static_cast<std::size_t>(nthreads), {});
#pragma omp parallel for schedule(dynamic, 64) num_threads(nthreads)
    for (long idx = 0; idx < static_cast<long>(words.size()); ++idx) {
        const Word& w = words[static_cast<std::size_t>(idx)];
        auto reducts = oneStepReducts(*p, w);
        for (std::size_t k = 1; k < reducts.size(); ++k)
            if (!(reducts[k] == reducts[0])) {
                local[static_cast<std::size_t>(omp_get_thread_num())].push_back(wordToString(*p, w));
                break;
            }
    }
#else
    (void)threads;
    for (const auto& w : words) {
        auto reducts = oneStepReducts(*p, w);
        for (std::size_t k = 1; k < reducts.size(); ++k)
            if (!(reducts[k] == reducts[0])) {
                local[0].push_back(wordToString(*p, w));
                break;
            }
    }
#endif
    for (auto& v : local) report.violations.insert(report.violations.end(), v.begin(), v.end());
    std::sort(report.violations.begin(), report.violations.end());
    report.violations.erase(std::unique(report.violations.begin(), report.violations.end()),
                            report.violations.end());
    return report;
}

}  // namespace qpb
