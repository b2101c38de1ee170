#include "qpb/hopf.hpp"

#include <algorithm>

#include "qpb/linalg.hpp"

namespace qpb {

namespace {

Word unitLetters(const Monomial& m) {
    Word w;
    for (const auto& [g, e] : m.factors) {
        int s = e > 0 ? 1 : -1;
        for (int i = 0; i < (e > 0 ? e : -e); ++i) w.push_back({g, s});
    }
    return w;
}

}  // namespace

TensorElement coproduct(const Element& x) {
    const PresPtr& p = x.presentation();
    const HopfData& h = p->hopf();
    TensorElement out = TensorElement::zero(p, p);
    for (const auto& [m, c] : x.terms()) {
        TensorElement acc = TensorElement::simple(p, p, Monomial::unit(), Monomial::unit(), c);
        for (const auto& l : unitLetters(m)) {
            auto it = h.coproductImages.find({l.gen, l.exp});
            if (it == h.coproductImages.end()) throw NoHopfData(p->name());
            acc = acc * it->second;
        }
        out = out + acc;
    }
    return out;
}

RatQ counit(const Element& x) {
    const PresPtr& p = x.presentation();
    const HopfData& h = p->hopf();
    RatQ out = RatQ::zero();
    for (const auto& [m, c] : x.terms()) {
        RatQ acc = c;
        for (const auto& l : unitLetters(m)) {
            auto it = h.counitImages.find({l.gen, l.exp});
            if (it == h.counitImages.end()) throw NoHopfData(p->name());
            acc *= it->second;
            if (acc.isZero()) break;
        }
        out += acc;
    }
    return out;
}

Element antipode(const Element& x) {
    const PresPtr& p = x.presentation();
    const HopfData& h = p->hopf();
    if (!h.hasAntipode) throw NoHopfData(p->name() + " (no antipode)");
    Element out = Element::zero(p);
    for (const auto& [m, c] : x.terms()) {
        Element acc = Element::scalar(p, c);
        Word w = unitLetters(m);
        std::reverse(w.begin(), w.end());  // S is anti-multiplicative
        for (const auto& l : w) {
            auto it = h.antipodeImages.find({l.gen, l.exp});
            if (it == h.antipodeImages.end()) throw NoHopfData(p->name());
            acc = acc * it->second;
        }
        out = out + acc;
    }
    return out;
}

Tensor3 coproduct2Left(const Element& x) {
    const PresPtr& p = x.presentation();
    TensorElement d = coproduct(x);
    Tensor3 out = Tensor3::zero(p, p, p);
    for (const auto& [k, c] : d.terms) {
        TensorElement dl = coproduct(Element(p, RawTerms{{k.first, RatQ::one()}}));
        for (const auto& [k2, c2] : dl.terms) out.addTerm(k2.first, k2.second, k.second, c * c2);
    }
    return out;
}

Tensor3 coproduct2Right(const Element& x) {
    const PresPtr& p = x.presentation();
    TensorElement d = coproduct(x);
    Tensor3 out = Tensor3::zero(p, p, p);
    for (const auto& [k, c] : d.terms) {
        TensorElement dr = coproduct(Element(p, RawTerms{{k.second, RatQ::one()}}));
        for (const auto& [k2, c2] : dr.terms) out.addTerm(k.first, k2.first, k2.second, c * c2);
    }
    return out;
}

HopfCheckResult checkHopfAxioms(const PresPtr& p, int maxDegree, int bound) {
    HopfCheckResult res;
    const HopfData& h = p->hopf();
    for (const auto& m : p->monomialWindow(maxDegree, bound)) {
        Element x(p, RawTerms{{m, RatQ::one()}});
        ++res.monomialsChecked;
        if (!(coproduct2Left(x) == coproduct2Right(x))) {
            res.ok = false;
            res.firstFailure = "coassociativity on " + x.str();
            return res;
        }
        TensorElement d = coproduct(x);
        Element leftCounit = Element::zero(p), rightCounit = Element::zero(p);
        for (const auto& [k, c] : d.terms) {
            RatQ el = counit(Element(p, RawTerms{{k.first, RatQ::one()}}));
            RatQ er = counit(Element(p, RawTerms{{k.second, RatQ::one()}}));
            leftCounit = leftCounit + Element(p, RawTerms{{k.second, c * el}});
            rightCounit = rightCounit + Element(p, RawTerms{{k.first, c * er}});
        }
        if (!(leftCounit == x) || !(rightCounit == x)) {
            res.ok = false;
            res.firstFailure = "counit on " + x.str();
            return res;
        }
        if (h.hasAntipode) {
            Element lhs = Element::zero(p), rhs = Element::zero(p);
            for (const auto& [k, c] : d.terms) {
                lhs = lhs + antipode(Element(p, RawTerms{{k.first, RatQ::one()}})) *
                                Element(p, RawTerms{{k.second, c}});
                rhs = rhs + Element(p, RawTerms{{k.first, c}}) *
                                antipode(Element(p, RawTerms{{k.second, RatQ::one()}}));
            }
            Element eps = Element::scalar(p, counit(x));
            if (!(lhs == eps) || !(rhs == eps)) {
                res.ok = false;
                res.firstFailure = "antipode on " + x.str();
                return res;
            }
        }
    }
    return res;
}

namespace {

/// Solves antipode images on all letters from S(x1) x2 = eps(x) 1 with a
/// degree-1 ansatz (generator letters plus the unit).
std::map<std::pair<int, int>, Element> solveAntipode(
    const PresPtr& p, const std::map<std::pair<int, int>, TensorElement>& cop,
    const std::map<std::pair<int, int>, RatQ>& eps) {
    // Ansatz monomials: 1 and every generator letter.
    std::vector<Monomial> ansatz;
    ansatz.push_back(Monomial::unit());
    std::vector<std::pair<int, int>> letters;
    for (int g = 0; g < p->generatorCount(); ++g) {
        ansatz.push_back(Monomial::gen(g, 1));
        letters.push_back({g, 1});
        if (p->gen(g).invertible) {
            ansatz.push_back(Monomial::gen(g, -1));
            letters.push_back({g, -1});
        }
    }
    const int width = static_cast<int>(ansatz.size());
    auto unknown = [&](int letterIdx, int a) { return letterIdx * width + a; };

    LinSystem sys;
    sys.ncols = static_cast<int>(letters.size()) * width;
    // Per letter l: sum over Delta(l) terms of ansatz(m1) * m2 = eps(l) * 1.
    for (std::size_t li = 0; li < letters.size(); ++li) {
        auto l = letters[li];
        const TensorElement& d = cop.at(l);
        std::map<Monomial, SparseVec> perMonomial;  // output monomial -> linear form
        for (const auto& [k, c] : d.terms) {
            if (k.first.isUnit() || k.first.factors.size() != 1)
                throw Error("antipode ansatz: coproduct leg not a single letter");
            auto leg = std::pair{k.first.factors[0].first, k.first.factors[0].second};
            int legIdx = -1;
            for (std::size_t j = 0; j < letters.size(); ++j)
                if (letters[j] == leg) legIdx = static_cast<int>(j);
            if (legIdx < 0) throw Error("antipode ansatz: unknown leg letter");
            // ansatz(m1) = sum_a x_{leg,a} * ansatz[a]; multiply by m2 on the right
            for (std::size_t a = 0; a < ansatz.size(); ++a) {
                Word w = ansatz[a].word();
                Word w2 = k.second.word();
                w.insert(w.end(), w2.begin(), w2.end());
                for (const auto& [om, oc] : p->normalizeWord(w, c))
                    perMonomial[om][unknown(legIdx, static_cast<int>(a))] += oc;
            }
        }
        // subtract eps(l)*1
        perMonomial[Monomial::unit()][sys.ncols] += -eps.at(l);
        for (auto& [om, row] : perMonomial) {
            for (auto it = row.begin(); it != row.end();)
                it = it->second.isZero() ? row.erase(it) : std::next(it);
            if (!row.empty()) sys.rows.push_back(row);
        }
    }
    std::vector<RatQ> sol = solveUnique(sys, "antipode ansatz for " + p->name());
    std::map<std::pair<int, int>, Element> out;
    for (std::size_t li = 0; li < letters.size(); ++li) {
        RawTerms t;
        for (int a = 0; a < width; ++a) {
            const RatQ& c = sol[static_cast<std::size_t>(unknown(static_cast<int>(li), a))];
            if (!c.isZero()) t[ansatz[static_cast<std::size_t>(a)]] = c;
        }
        out[letters[li]] = Element(p, std::move(t));
    }
    return out;
}

}  // namespace

void attachHopfOqSl2(const std::shared_ptr<Presentation>& sl2) {
    PresPtr p = sl2;
    int A = p->generatorIndex("alpha"), B = p->generatorIndex("beta");
    int C = p->generatorIndex("gamma"), D = p->generatorIndex("delta");
    auto hd = std::make_shared<HopfData>();
    hd->pres = p;
    auto gm = [&](int g) { return Monomial::gen(g, 1); };
    auto simple2 = [&](int g1, int g2, int g3, int g4) {
        TensorElement t = TensorElement::zero(p, p);
        t.addTerm(gm(g1), gm(g2), RatQ::one());
        t.addTerm(gm(g3), gm(g4), RatQ::one());
        return t;
    };
    // Delta a_{mu nu} = a_{mu rho} (x) a_{rho nu}
    hd->coproductImages[{A, 1}] = simple2(A, A, B, C);
    hd->coproductImages[{B, 1}] = simple2(A, B, B, D);
    hd->coproductImages[{C, 1}] = simple2(C, A, D, C);
    hd->coproductImages[{D, 1}] = simple2(C, B, D, D);
    hd->counitImages[{A, 1}] = RatQ::one();
    hd->counitImages[{B, 1}] = RatQ::zero();
    hd->counitImages[{C, 1}] = RatQ::zero();
    hd->counitImages[{D, 1}] = RatQ::one();
    hd->antipodeImages = solveAntipode(p, hd->coproductImages, hd->counitImages);
    hd->hasAntipode = true;
    sl2->attachHopf(hd);
}

void attachHopfUqSl2(const std::shared_ptr<Presentation>& uq) {
    PresPtr p = uq;
    int F = p->generatorIndex("F"), K = p->generatorIndex("K"), E = p->generatorIndex("E");
    auto hd = std::make_shared<HopfData>();
    hd->pres = p;
    auto t0 = [&](int g, int e) { return Monomial::gen(g, e); };
    {
        TensorElement dE = TensorElement::zero(p, p);
        dE.addTerm(t0(E, 1), t0(K, 1), RatQ::one());
        dE.addTerm(t0(K, -1), t0(E, 1), RatQ::one());
        hd->coproductImages[{E, 1}] = dE;
        TensorElement dF = TensorElement::zero(p, p);
        dF.addTerm(t0(F, 1), t0(K, 1), RatQ::one());
        dF.addTerm(t0(K, -1), t0(F, 1), RatQ::one());
        hd->coproductImages[{F, 1}] = dF;
        hd->coproductImages[{K, 1}] = TensorElement::simple(p, p, t0(K, 1), t0(K, 1), RatQ::one());
        hd->coproductImages[{K, -1}] = TensorElement::simple(p, p, t0(K, -1), t0(K, -1), RatQ::one());
    }
    hd->counitImages[{E, 1}] = RatQ::zero();
    hd->counitImages[{F, 1}] = RatQ::zero();
    hd->counitImages[{K, 1}] = RatQ::one();
    hd->counitImages[{K, -1}] = RatQ::one();
    hd->antipodeImages = solveAntipode(p, hd->coproductImages, hd->counitImages);
    hd->hasAntipode = true;
    uq->attachHopf(hd);
}

void attachHopfOqP(const std::shared_ptr<Presentation>& oqp, const PresPtr& sl2,
                   const AlgebraMap& pi) {
    PresPtr p = oqp;
    const HopfData& hs = sl2->hopf();
    auto hd = std::make_shared<HopfData>();
    hd->pres = p;
    // Push the O_q(SL_2) data through pi on generator preimages, then add the
    // grouplike inverse letter.
    int T = p->generatorIndex("t"), P = p->generatorIndex("p");
    int A = sl2->generatorIndex("alpha"), B = sl2->generatorIndex("beta");
    int D = sl2->generatorIndex("delta");
    auto push = [&](int srcGen) {
        return mapTensor(hs.coproductImages.at({srcGen, 1}), &pi, &pi);
    };
    hd->coproductImages[{T, 1}] = push(A);
    hd->coproductImages[{P, 1}] = push(B);
    hd->coproductImages[{T, -1}] = push(D);
    hd->counitImages[{T, 1}] = hs.counitImages.at({A, 1});
    hd->counitImages[{P, 1}] = hs.counitImages.at({B, 1});
    hd->counitImages[{T, -1}] = hs.counitImages.at({D, 1});
    hd->antipodeImages[{T, 1}] = pi.apply(hs.antipodeImages.at({A, 1}));
    hd->antipodeImages[{P, 1}] = pi.apply(hs.antipodeImages.at({B, 1}));
    hd->antipodeImages[{T, -1}] = pi.apply(hs.antipodeImages.at({D, 1}));
    hd->hasAntipode = true;
    oqp->attachHopf(hd);
}

HopfProjection buildHopfQuotient(const PresPtr& A, const PresPtr& H, AlgebraMap pi,
                                 AlgebraMap section, std::vector<Element> idealGens) {
    std::string fail;
    if (!pi.respectsRelations(&fail)) throw AxiomViolation("projection breaks relation " + fail);
    // Hopf ideal conditions for each ideal generator g:
    //   (pi (x) pi) Delta(g) = 0, eps(g) = 0, pi(S(g)) = 0.
    for (const auto& g : idealGens) {
        TensorElement dg = coproduct(g);
        if (!mapTensor(dg, &pi, &pi).isZero())
            throw NotAHopfIdeal("(pi x pi) Delta(" + g.str() + ") != 0");
        if (!counit(g).isZero()) throw NotAHopfIdeal("eps(" + g.str() + ") != 0");
        if (!pi.apply(antipode(g)).isZero()) throw NotAHopfIdeal("pi(S(" + g.str() + ")) != 0");
    }
    // pi intertwines the structure maps on generators.
    const HopfData& ha = A->hopf();
    const HopfData& hh = H->hopf();
    for (const auto& [letter, dg] : ha.coproductImages) {
        Element img = letter.second > 0 ? pi.images.count(letter.first) ? pi.images.at(letter.first)
                                                                        : Element::zero(H)
                                        : pi.invImages.count(letter.first)
                                              ? pi.invImages.at(letter.first)
                                              : Element::zero(H);
        TensorElement lhs = mapTensor(dg, &pi, &pi);
        TensorElement rhs = coproduct(img);
        if (!(lhs == rhs)) throw AxiomViolation("pi does not intertwine the coproducts");
        (void)hh;
    }
    // section is a section on generators (and on inverse letters where given).
    for (int g = 0; g < H->generatorCount(); ++g) {
        Element back = pi.apply(section.images.at(g));
        if (!(back == Element::generator(H, g, 1)))
            throw AxiomViolation("pi∘section != id on " + H->gen(g).name);
        if (auto it = section.invImages.find(g); it != section.invImages.end()) {
            if (!(pi.apply(it->second) == Element::generator(H, g, -1)))
                throw AxiomViolation("pi∘section != id on inverse of " + H->gen(g).name);
        }
    }
    HopfProjection out;
    out.pi = std::move(pi);
    out.section = std::move(section);
    out.idealGenerators = std::move(idealGens);
    return out;
}

TensorElement Coaction::applyMonomial(const Monomial& m, const RatQ& c) const {
    TensorElement acc = TensorElement::simple(A, H, Monomial::unit(), Monomial::unit(), c);
    for (const auto& l : unitLetters(m)) {
        auto it = images.find({l.gen, l.exp});
        if (it == images.end())
            throw Error("coaction: no image for letter of " + A->gen(l.gen).name);
        acc = acc * it->second;
    }
    return acc;
}

TensorElement Coaction::apply(const Element& x) const {
    if (x.presentation() != A) throw PresentationMismatch();
    TensorElement out = TensorElement::zero(A, H);
    for (const auto& [m, c] : x.terms()) out = out + applyMonomial(m, c);
    return out;
}

Tensor3 Coaction::applyIterated(const Element& x) const {
    TensorElement d = apply(x);
    Tensor3 out = Tensor3::zero(A, H, H);
    for (const auto& [k, c] : d.terms) {
        TensorElement inner = applyMonomial(k.first);
        for (const auto& [k2, c2] : inner.terms) out.addTerm(k2.first, k2.second, k.second, c * c2);
    }
    return out;
}

bool Coaction::isCoinvariant(const Element& x) const {
    TensorElement lhs = apply(x);
    TensorElement rhs = TensorElement::zero(A, H);
    for (const auto& [m, c] : x.terms()) rhs.addTerm(m, Monomial::unit(), c);
    return lhs == rhs;
}

Coaction coactionFromQuotient(const HopfProjection& proj) {
    const PresPtr& A = proj.pi.src;
    const PresPtr& H = proj.pi.dst;
    const HopfData& ha = A->hopf();
    Coaction c;
    c.A = A;
    c.H = H;
    for (const auto& [letter, dg] : ha.coproductImages)
        c.images[letter] = mapTensor(dg, nullptr, &proj.pi);
    return c;
}

Coaction coactionFromCoproduct(const PresPtr& h) {
    const HopfData& hd = h->hopf();
    Coaction c;
    c.A = h;
    c.H = h;
    for (const auto& [letter, dg] : hd.coproductImages) c.images[letter] = dg;
    return c;
}

CoactionCheckResult checkComoduleAxioms(const Coaction& c, int maxDegree, int bound) {
    CoactionCheckResult res;
    for (const auto& m : c.A->monomialWindow(maxDegree, bound)) {
        Element x(c.A, RawTerms{{m, RatQ::one()}});
        ++res.checked;
        // (delta_R x id) delta_R = (id x Delta) delta_R
        Tensor3 lhs = c.applyIterated(x);
        Tensor3 rhs = Tensor3::zero(c.A, c.H, c.H);
        TensorElement d = c.apply(x);
        for (const auto& [k, v] : d.terms) {
            TensorElement dh = coproduct(Element(c.H, RawTerms{{k.second, RatQ::one()}}));
            for (const auto& [k2, v2] : dh.terms) rhs.addTerm(k.first, k2.first, k2.second, v * v2);
        }
        if (!(lhs == rhs)) {
            res.ok = false;
            res.firstFailure = "comodule axiom on " + x.str();
            return res;
        }
        // counit leg: (id x eps) delta_R = id
        Element back = Element::zero(c.A);
        for (const auto& [k, v] : d.terms) {
            RatQ e = counit(Element(c.H, RawTerms{{k.second, RatQ::one()}}));
            back = back + Element(c.A, RawTerms{{k.first, v * e}});
        }
        if (!(back == x)) {
            res.ok = false;
            res.firstFailure = "counit leg on " + x.str();
            return res;
        }
    }
    // algebra map on generator pairs
    for (int g1 = 0; g1 < c.A->generatorCount(); ++g1)
        for (int g2 = 0; g2 < c.A->generatorCount(); ++g2) {
            Element x = Element::generator(c.A, g1, 1);
            Element y = Element::generator(c.A, g2, 1);
            if (!(c.apply(x * y) == c.apply(x) * c.apply(y))) {
                res.ok = false;
                res.firstFailure = "delta_R not multiplicative on " + x.str() + ", " + y.str();
                return res;
            }
        }
    return res;
}

std::vector<Element> coinvariantBasis(const Coaction& c, std::optional<int> weight, int maxAbs,
                                      int bound) {
    std::vector<Monomial> window = c.A->monomialWindow(maxAbs, bound, weight);
    if (window.empty()) return {};
    // delta_R(x) - x (x) 1 = 0 as a linear system over the window.
    std::map<std::pair<Monomial, Monomial>, SparseVec> rows;
    for (std::size_t i = 0; i < window.size(); ++i) {
        TensorElement d = c.applyMonomial(window[i]);
        d.addTerm(window[i], Monomial::unit(), -RatQ::one());
        for (const auto& [k, v] : d.terms) rows[k][static_cast<int>(i)] += v;
    }
    LinSystem sys;
    sys.ncols = static_cast<int>(window.size());
    for (auto& [k, row] : rows) {
        for (auto it = row.begin(); it != row.end();)
            it = it->second.isZero() ? row.erase(it) : std::next(it);
        if (!row.empty()) sys.rows.push_back(row);
    }
    std::vector<Element> out;
    for (const auto& v : nullspaceBasis(sys)) {
        RawTerms t;
        for (std::size_t i = 0; i < window.size(); ++i)
            if (!v[i].isZero()) t[window[i]] = v[i];
        out.push_back(Element(c.A, std::move(t)));
    }
    return out;
}

TensorElement coinvariantSplit(const Element& x) {
    const PresPtr& h = x.presentation();
    Tensor3 t3 = coproduct2Left(x);
    TensorElement out = TensorElement::zero(h, h);
    for (const auto& [k, c] : t3.terms) {
        Element part = Element(h, RawTerms{{std::get<0>(k), c}}) *
                       antipode(Element(h, RawTerms{{std::get<1>(k), RatQ::one()}}));
        for (const auto& [m, v] : part.terms()) out.addTerm(m, std::get<2>(k), v);
    }
    return out;
}

Element coinvariantSplitInverse(const TensorElement& te) {
    Element out = Element::zero(te.left);
    for (const auto& [k, c] : te.terms) {
        Word w = k.first.word();
        Word w2 = k.second.word();
        w.insert(w.end(), w2.begin(), w2.end());
        out = out + Element::word(te.left, w, c);
    }
    return out;
}

RatQ DualPairing::pairLetterWord(int gen, int sign, const Word& w) const {
    const std::string& nm = U->gen(gen).name;
    if (nm == "K") {
        RatQ acc = RatQ::one();
        for (const auto& l : w) {
            auto it = letterValues.find({{gen, sign}, l.gen});
            acc *= it == letterValues.end() ? RatQ::zero() : it->second;
            if (acc.isZero()) return acc;
        }
        return acc;
    }
    // E and F are (K^-1, K)-primitive: <X, w l> = <X, w><K, l> + <K^-1, w><X, l>.
    if (w.empty()) return RatQ::zero();
    Word head(w.begin(), w.end() - 1);
    const Letter& last = w.back();
    int K = U->generatorIndex("K");
    auto val = [&](std::pair<int, int> ul, int ag) {
        auto it = letterValues.find({ul, ag});
        return it == letterValues.end() ? RatQ::zero() : it->second;
    };
    return pairLetterWord(gen, sign, head) * val({K, 1}, last.gen) +
           pairLetterWord(K, -1, head) * val({gen, sign}, last.gen);
}

namespace {

RatQ pairMonoWord(const DualPairing& dp, const Word& uWord, const Element& x) {
    if (uWord.empty()) return counit(x);
    Letter first = uWord.front();
    Word rest(uWord.begin() + 1, uWord.end());
    if (rest.empty()) {
        // direct evaluation of a single functional letter
        RatQ acc = RatQ::zero();
        for (const auto& [m, c] : x.terms()) {
            Word w;
            for (const auto& [g, e] : m.factors)
                for (int i = 0; i < e; ++i) w.push_back({g, 1});
            acc += c * dp.pairLetterWord(first.gen, first.exp, w);
        }
        return acc;
    }
    TensorElement d = coproduct(x);
    RatQ acc = RatQ::zero();
    for (const auto& [k, c] : d.terms) {
        Word w1;
        for (const auto& [g, e] : k.first.factors)
            for (int i = 0; i < e; ++i) w1.push_back({g, 1});
        RatQ v = dp.pairLetterWord(first.gen, first.exp, w1);
        if (v.isZero()) continue;
        acc += c * v * pairMonoWord(dp, rest, Element(dp.A, RawTerms{{k.second, RatQ::one()}}));
    }
    return acc;
}

}  // namespace

RatQ DualPairing::pair(const Element& u, const Element& x) const {
    if (u.presentation() != U || x.presentation() != A) throw PresentationMismatch();
    RatQ acc = RatQ::zero();
    for (const auto& [um, uc] : u.terms()) {
        Word w = unitLetters(um);
        acc += uc * pairMonoWord(*this, w, x);
    }
    return acc;
}

Element DualPairing::convolve(const Element& f, const Element& x) const {
    TensorElement d = coproduct(x);
    Element out = Element::zero(A);
    for (const auto& [k, c] : d.terms) {
        RatQ v = pair(f, Element(A, RawTerms{{k.second, RatQ::one()}}));
        if (!v.isZero()) out = out + Element(A, RawTerms{{k.first, c * v}});
    }
    return out;
}

DualPairing buildPairing(const PresPtr& uq, const PresPtr& sl2) {
    DualPairing dp;
    dp.U = uq;
    dp.A = sl2;
    int E = uq->generatorIndex("E"), F = uq->generatorIndex("F"), K = uq->generatorIndex("K");
    int A = sl2->generatorIndex("alpha"), B = sl2->generatorIndex("beta");
    int C = sl2->generatorIndex("gamma"), D = sl2->generatorIndex("delta");
    dp.letterValues[{{K, 1}, A}] = RatQ::rPow(1);    // K(alpha) = q^(1/2)
    dp.letterValues[{{K, 1}, D}] = RatQ::rPow(-1);   // K(delta) = q^(-1/2)
    dp.letterValues[{{K, -1}, A}] = RatQ::rPow(-1);
    dp.letterValues[{{K, -1}, D}] = RatQ::rPow(1);
    dp.letterValues[{{E, 1}, C}] = RatQ::one();      // E(gamma) = 1
    dp.letterValues[{{F, 1}, B}] = RatQ::one();      // F(beta) = 1
    return dp;
}

}  // namespace qpb
