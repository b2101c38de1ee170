#include "qpb/ore.hpp"

#include <algorithm>
#include <random>

namespace qpb {

namespace {

/// True when the rule is a pure q-commutation: single-monomial rhs on the
/// same two letters, swapped.
bool isSwapRule(const RuleKey& key, const RawTerms& rhs) {
    if (key.g2 < 0 || rhs.size() != 1) return false;
    const Monomial& m = rhs.begin()->first;
    if (m.factors.size() != 2) return false;
    auto f1 = m.factors[0], f2 = m.factors[1];
    return ((f1.first == key.g1 && f1.second == key.s1 && f2.first == key.g2 && f2.second == key.s2) ||
            (f1.first == key.g2 && f1.second == key.s2 && f2.first == key.g1 && f2.second == key.s1));
}

Monomial negateGen(const Monomial& m, int g) {
    Monomial out = m;
    for (auto& [gen, e] : out.factors)
        if (gen == g) e = -e;
    return out;
}

}  // namespace

LocalizedPresentation localize(const PresPtr& p, const std::string& genName) {
    int g = p->generatorIndex(genName);
    if (g < 0) throw UnsupportedOreElement(genName + " (no such generator)");
    if (p->gen(g).invertible) {
        // already invertible (t in O_q(P)); nothing to do
        return {p, identityMap(p)};
    }
    const bool isAlpha = genName == "alpha";
    const bool isGamma = genName == "gamma";
    const bool isU = genName == "u";
    if (!isAlpha && !isGamma && !isU) throw UnsupportedOreElement(genName);

    auto np = std::make_shared<Presentation>(p->name() + "[" + p->gen(g).invName + "]");
    for (int i = 0; i < p->generatorCount(); ++i) {
        GeneratorInfo info = p->gen(i);
        if (i == g) info.invertible = true;
        np->addGenerator(info);
    }
    // Copy rules; derive inverse-letter variants of the q-commutations
    // involving g (inverting one letter inverts the scalar).
    for (const auto& [key, rhs] : p->rules()) {
        np->addRule(key, rhs);
        if (!isSwapRule(key, rhs)) continue;
        const RatQ& c = rhs.begin()->second;
        const Monomial& m = rhs.begin()->first;
        if (key.g1 == g) {
            RawTerms nr;
            nr[negateGen(m, g)] = c.inv();
            np->addRule(RuleKey{key.g1, -key.s1, key.g2, key.s2}, std::move(nr));
        } else if (key.g2 == g) {
            RawTerms nr;
            nr[negateGen(m, g)] = c.inv();
            np->addRule(RuleKey{key.g1, key.s1, key.g2, -key.s2}, std::move(nr));
        }
    }
    for (const auto& rel : p->relations()) np->addRelation(rel);
    np->addRelation({genName + "*inverse", {{g, 1}, {g, -1}}, {{{}, RatQ::one()}}});
    np->addRelation({"inverse*" + genName, {{g, -1}, {g, 1}}, {{{}, RatQ::one()}}});

    if (isAlpha) {
        // delta = ainv + q^-1 ainv beta gamma, forced by the determinant.
        int D = p->generatorIndex("delta");
        int B = p->generatorIndex("beta");
        int C = p->generatorIndex("gamma");
        if (D < 0 || B < 0 || C < 0) throw UnsupportedOreElement(genName);
        RawTerms elim;
        elim[Monomial::gen(g, -1)] = RatQ::one();
        Monomial abc;
        abc.factors = {{g, -1}, {B, 1}, {C, 1}};
        elim[abc] = RatQ::qPow(-1);
        np->addRule(RuleKey{D, 1}, elim);
        np->addRelation({"delta elimination",
                         {{D, 1}},
                         {{{{g, -1}}, RatQ::one()}, {{{g, -1}, {B, 1}, {C, 1}}, RatQ::qPow(-1)}}});
    }
    np->setTerminationNote(p->terminationNote() + "; inverse letters sort identically");

    ConfluenceReport rep = checkConfluence(np, 4);
    if (!rep.clean())
        throw Error("localized presentation " + np->name() + " not confluent: " + rep.violations[0]);

    AlgebraMap embed;
    embed.name = p->name() + "->" + np->name();
    embed.src = p;
    embed.dst = np;
    for (int i = 0; i < p->generatorCount(); ++i) {
        embed.images[i] = Element::generator(np, i, 1);
        if (p->gen(i).invertible) embed.invImages[i] = Element::generator(np, i, -1);
    }
    return {np, embed};
}

Coaction extendCoaction(const Coaction& c, const PresPtr& localized, const std::string& genName) {
    int g = localized->generatorIndex(genName);
    Coaction out;
    out.A = localized;
    out.H = c.H;
    for (const auto& [letter, te] : c.images) {
        TensorElement nt = TensorElement::zero(localized, c.H);
        for (const auto& [k, v] : te.terms) {
            // re-normalize the A side in the localized presentation
            for (const auto& [am, ac] : localized->normalizeWord(k.first.word(), v))
                nt.addTerm(am, k.second, ac);
        }
        out.images[letter] = std::move(nt);
    }
    // delta_R(g^-1) = (delta_R(g))^-1, which must be a single invertible term.
    auto it = out.images.find({g, 1});
    if (it == out.images.end() || it->second.terms.size() != 1)
        throw NotInvertibleCoactionImage(genName);
    const auto& [k, v] = *it->second.terms.begin();
    Monomial amInv, hmInv;
    for (auto [gen, e] : k.first.factors) amInv.factors.push_back({gen, -e});
    for (auto [gen, e] : k.second.factors) hmInv.factors.push_back({gen, -e});
    std::reverse(amInv.factors.begin(), amInv.factors.end());
    std::reverse(hmInv.factors.begin(), hmInv.factors.end());
    TensorElement inv = TensorElement::zero(localized, c.H);
    for (const auto& [am, ac] : localized->normalizeWord(amInv.word(), v.inv()))
        for (const auto& [hm, hc] : c.H->normalizeWord(hmInv.word(), ac))
            inv.addTerm(am, hm, hc);
    // verify the inverse
    TensorElement prod = it->second * inv;
    TensorElement unit = TensorElement::simple(localized, c.H, Monomial::unit(), Monomial::unit(),
                                               RatQ::one());
    if (!(prod == unit)) throw NotInvertibleCoactionImage(genName);
    out.images[{g, -1}] = std::move(inv);
    return out;
}

CalcPtr extendCalculus(const CalcPtr& c, const LocalizedPresentation& loc,
                       const std::string& genName,
                       std::shared_ptr<const Coaction> localizedCoaction) {
    const PresPtr& A = loc.pres;
    int g = A->generatorIndex(genName);
    auto out = std::make_shared<Calculus>();
    out->name = c->name + "[" + A->gen(g).invName + "]";
    out->base = A;
    out->labels = c->labels;
    const int n = c->labelCount();

    auto push = [&](const Element& e) { return loc.embed.apply(e); };
    for (const auto& [letter, T] : c->tables) {
        std::vector<std::vector<Element>> nt(static_cast<std::size_t>(n),
                                             std::vector<Element>(static_cast<std::size_t>(n),
                                                                  Element::zero(A)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                nt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    push(T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        out->tables[letter] = std::move(nt);
    }
    for (const auto& [letter, dm] : c->dTable) {
        std::map<int, Element> nd;
        for (const auto& [lab, e] : dm) {
            Element pe = push(e);
            if (!pe.isZero()) nd[lab] = pe;
        }
        out->dTable[letter] = std::move(nd);
    }

    // Solve T(g^-1) by back-substitution: the table of g must be lower
    // triangular with invertible monomial diagonal.
    const auto& T = out->table(g, 1);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j)
            if (!T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].isZero())
                throw TableNotInvertible(genName + " (not lower triangular)");
        const Element& diag = T[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        if (diag.termCount() != 1) throw TableNotInvertible(genName);
    }
    auto invertMonomialElement = [&](const Element& e) {
        const auto& [m, coef] = *e.terms().begin();
        Monomial mi;
        for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it)
            mi.factors.push_back({it->first, -it->second});
        return Element::word(A, mi.word(), coef.inv());
    };
    std::vector<std::vector<Element>> S(static_cast<std::size_t>(n),
                                        std::vector<Element>(static_cast<std::size_t>(n),
                                                             Element::zero(A)));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j >= 0; --j) {
            if (i == j) {
                S[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = invertMonomialElement(
                    T[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
                continue;
            }
            // sum_{m=j..i} S[i][m] T[m][j] = 0  =>  S[i][j] = -(sum_{m>j}) T[j][j]^-1
            Element acc = Element::zero(A);
            for (int m = j + 1; m <= i; ++m)
                acc = acc + S[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] *
                                T[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
            S[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (-acc) * invertMonomialElement(T[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)]);
        }
    }
    out->tables[{g, -1}] = S;

    // d(g^-1) = -g^-1 d(g) g^-1.
    {
        CalcPtr tmp = std::make_shared<Calculus>(*out);
        OneForm dg{tmp, tmp->dTable.at({g, 1})};
        OneForm dgi = leftMul(-Element::generator(A, g, -1),
                              rightMulLetter(dg, g, -1));
        std::map<int, Element> comps;
        for (const auto& [lab, e] : dgi.comps) comps[lab] = e;
        out->dTable[{g, -1}] = std::move(comps);
    }

    out->coaction = localizedCoaction;
    // A·dA expressions remain valid; re-express their coefficients.
    for (const auto& [lab, expr] : c->formExprs) {
        std::vector<std::pair<Element, Element>> ne;
        for (const auto& [a, b] : expr) ne.push_back({push(a), push(b)});
        out->formExprs[lab] = std::move(ne);
    }
    out->formCoaction = c->formCoaction;

    CalcPtr oc = out;
    // (w^i g^-1) g = w^i and d(g g^-1) = d(g^-1 g) = 0, exactly.
    for (int i = 0; i < n; ++i) {
        OneForm w = OneForm::basis(oc, i);
        if (!(rightMulLetter(rightMulLetter(w, g, -1), g, 1) == w))
            throw TableNotInvertible(genName + " (inverse action fails)");
    }
    if (!differentiateWord(oc, {{g, 1}, {g, -1}}).isZero() ||
        !differentiateWord(oc, {{g, -1}, {g, 1}}).isZero())
        throw InconsistentTable("d(" + genName + " inverse) breaks Leibniz");
    WellDefinedReport rep = checkWellDefined(oc);
    if (!rep.ok) throw InconsistentTable("localized calculus: " + rep.firstFailure);
    return oc;
}

LocalizedPresentation iterateLocalization(const PresPtr& p, const std::string& g1,
                                          const std::string& g2, int samples) {
    LocalizedPresentation first = localize(p, g1);
    LocalizedPresentation oneTwo = localize(first.pres, g2);
    LocalizedPresentation second = localize(p, g2);
    LocalizedPresentation twoOne = localize(second.pres, g1);

    // Rule sets must be identical after canonical sorting (maps are sorted).
    if (!(oneTwo.pres->rules() == twoOne.pres->rules()))
        throw OrderDependenceDetected(g1 + "," + g2 + ": rule sets differ");

    // Random degree-<=3 elements of p embed identically through both chains.
    std::mt19937 rng(20240819);
    auto window = p->monomialWindow(3, 3);
    AlgebraMap chain1 = composeMaps(oneTwo.embed, first.embed);
    AlgebraMap chain2 = composeMaps(twoOne.embed, second.embed);
    for (int s = 0; s < samples; ++s) {
        RawTerms t;
        for (int k = 0; k < 3; ++k) {
            const Monomial& m = window[rng() % window.size()];
            int num = static_cast<int>(rng() % 7) - 3;
            int qe = static_cast<int>(rng() % 5) - 2;
            if (num == 0) num = 1;
            RatQ coef = RatQ::qPow(qe) * RatQ::ofInt(num);
            t[m] = t.count(m) ? t[m] + coef : coef;
        }
        Element x(p, t);
        Element e1 = chain1.apply(x);
        Element e2 = chain2.apply(x);
        if (!(e1.terms() == e2.terms()))
            throw OrderDependenceDetected(g1 + "," + g2 + ": embedding differs on sample");
    }
    return oneTwo;
}

CalculusMatching matchCalculus(const CalcPtr& src, const PullbackResult& srcOrigin,
                               const CalcPtr& reference, int windowDeg, int bound,
                               bool requireBijective) {
    const PresPtr& H = src->base;
    if (reference->base != H) throw PresentationMismatch();
    CalculusMatching match;
    // Theta(eta_k) := d_ref(origin_k).
    for (const auto& m : srcOrigin.origin)
        match.images.push_back(differentiate(reference, Element(H, RawTerms{{m, RatQ::one()}})));

    auto theta = [&](const OneForm& w) {
        OneForm out = OneForm::zero(reference);
        for (const auto& [lab, e] : w.comps)
            out = out + leftMul(e, match.images[static_cast<std::size_t>(lab)]);
        return out;
    };

    // d-intertwining on letters and window monomials.
    auto window = H->monomialWindow(windowDeg, bound);
    for (const auto& m : window) {
        Element h(H, RawTerms{{m, RatQ::one()}});
        if (!(theta(differentiate(src, h)) == differentiate(reference, h)))
            throw NotIsomorphic("Theta d != d on " + h.str());
    }
    // Right H-linearity: Theta(eta_k * l) = Theta(eta_k) * l on letters.
    for (int g = 0; g < H->generatorCount(); ++g) {
        std::vector<std::pair<int, int>> letters{{g, 1}};
        if (H->gen(g).invertible) letters.push_back({g, -1});
        for (auto [gg, ss] : letters)
            for (int k = 0; k < src->labelCount(); ++k) {
                OneForm lhs = theta(rightMulLetter(OneForm::basis(src, k), gg, ss));
                OneForm rhs = rightMulLetter(theta(OneForm::basis(src, k)), gg, ss);
                if (!(lhs == rhs))
                    throw NotIsomorphic("Theta not right H-linear on " + H->gen(g).name);
            }
    }
    // Bijectivity on the window: the reference basis lies in the span of
    // H-window multiples of Theta(eta_k), and only the trivial combination
    // vanishes.
    if (requireBijective) {
        std::map<std::pair<int, Monomial>, int> coords;
        auto coordOf = [&](int lab, const Monomial& m) {
            auto key = std::pair{lab, m};
            auto it = coords.find(key);
            if (it != coords.end()) return it->second;
            int id = static_cast<int>(coords.size());
            coords.emplace(key, id);
            return id;
        };
        auto vec = [&](const OneForm& w) {
            SparseVec v;
            for (const auto& [lab, e] : w.comps)
                for (const auto& [m, cv] : e.terms()) v[coordOf(lab, m)] = cv;
            return v;
        };
        RowSpace span;
        int count = 0;
        LinSystem nsys;
        std::map<int, SparseVec> nrows;
        for (std::size_t k = 0; k < match.images.size(); ++k)
            for (const auto& m : window) {
                OneForm f = leftMul(Element(H, RawTerms{{m, RatQ::one()}}),
                                    match.images[k]);
                span.add(vec(f));
                for (const auto& [coord, v] : vec(f)) nrows[coord][count] = v;
                ++count;
            }
        for (int lab = 0; lab < reference->labelCount(); ++lab)
            if (!span.contains(vec(OneForm::basis(reference, lab))))
                throw NotIsomorphic("Theta not surjective onto " +
                                    reference->labels[static_cast<std::size_t>(lab)]);
        LinSystem s2;
        s2.ncols = count;
        for (auto& [coord, row] : nrows) s2.rows.push_back(row);
        // injectivity: no nonzero H-window combination of the images vanishes
        if (!nullspaceBasis(s2).empty())
            throw NotIsomorphic("Theta has a kernel in the window");
    }
    // Colinearity: Delta_R(Theta(d h)) = Theta(d h0) (x) h1 on generators.
    if (reference->formCoaction && reference->coaction) {
        for (int g = 0; g < H->generatorCount(); ++g) {
            Element h = Element::generator(H, g, 1);
            GammaTensor lhs = coactRight(theta(differentiate(src, h)));
            GammaTensor rhs = GammaTensor::zero(reference, reference->coaction->H);
            TensorElement dh = coproduct(h);
            for (const auto& [k, v] : dh.terms) {
                OneForm f = theta(differentiate(src, Element(H, RawTerms{{k.first, v}})));
                for (const auto& [lab, e] : f.comps)
                    for (const auto& [am, ac] : e.terms()) rhs.addTerm(lab, am, k.second, ac);
            }
            if (!(lhs == rhs)) throw NotIsomorphic("Theta not right H-colinear on " + H->gen(g).name);
        }
    }
    return match;
}

bool inducedCalculiIsomorphic(const CalcPtr& c1, const PullbackResult& o1, const CalcPtr& c2,
                              const PullbackResult& o2, int windowDeg, int bound,
                              std::string* witness) {
    try {
        matchCalculus(c1, o1, c2, windowDeg, bound, true);
        matchCalculus(c2, o2, c1, windowDeg, bound, true);
        return true;
    } catch (const NotIsomorphic& e) {
        if (witness) *witness = e.what();
        return false;
    }
}

}  // namespace qpb
