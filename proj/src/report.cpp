#include "qpb/report.hpp"

#include <random>
#include <sstream>

#include <json.hpp>

#include "qpb/factory.hpp"
#include "qpb/sheaf.hpp"
#include "qpb/smash.hpp"

namespace qpb {

bool Report::allPassed() const { return failures() == 0; }

int Report::failures() const {
    int n = 0;
    for (const auto& c : checks) n += (c.status == "fail");
    return n;
}

const std::vector<std::string>& suiteNames() {
    static const std::vector<std::string> names = {
        "relations", "hopf", "calculus-4dplus", "quotient-p", "localization", "smash", "sheaf-p1"};
    return names;
}

namespace {

void pass(Report& r, const std::string& anchor, const std::string& witness = "",
          const std::string& window = "") {
    r.checks.push_back({anchor, "pass", witness, window});
}

void record(Report& r, const std::string& anchor, bool ok, const std::string& witness = "",
            const std::string& window = "") {
    r.checks.push_back({anchor, ok ? "pass" : "fail", witness, window});
}

void flagged(Report& r, const std::string& anchor, const std::string& witness,
             const std::string& window = "") {
    r.checks.push_back({anchor, "flagged", witness, window});
}

Element evalText(const Engine& e, const Space& sp, const std::string& text) {
    Value v = evaluate(parseExpr(text), sp);
    if (std::holds_alternative<RatQ>(v)) return Element::scalar(sp.algebra, std::get<RatQ>(v));
    return std::get<Element>(v);
}

/// Deterministic random elements over a monomial window.
struct Sampler {
    std::mt19937 rng;
    explicit Sampler(unsigned seed) : rng(seed) {}

    Element element(const PresPtr& p, const std::vector<Monomial>& window, int terms) {
        RawTerms t;
        for (int i = 0; i < terms; ++i) {
            const Monomial& m = window[rng() % window.size()];
            int num = static_cast<int>(rng() % 7) - 3;
            if (num == 0) num = 1;
            int qe = static_cast<int>(rng() % 5) - 2;
            RatQ c = RatQ::qPow(qe) * RatQ::ofInt(num);
            auto it = t.find(m);
            if (it == t.end())
                t.emplace(m, c);
            else {
                it->second += c;
                if (it->second.isZero()) t.erase(it);
            }
        }
        return Element(p, std::move(t));
    }

    OneForm form(const CalcPtr& c, const std::vector<Monomial>& window, int terms) {
        OneForm w = OneForm::zero(c);
        for (int i = 0; i < terms; ++i) {
            int lab = static_cast<int>(rng() % static_cast<unsigned>(c->labelCount()));
            const Monomial& m = window[rng() % window.size()];
            int num = static_cast<int>(rng() % 5) - 2;
            if (num == 0) num = 1;
            w.addTerm(lab, Element(c->base, RawTerms{{m, RatQ::ofInt(num)}}));
        }
        return w;
    }
};

// ---------------------------------------------------------------------------

Report suiteRelations(const Engine& e) {
    Report r;
    r.suite = "relations";
    std::vector<std::pair<std::string, PresPtr>> pres = {
        {"O_q(M_2)", presentationOqM(2)}, {"O_q(SL_2)", e.sl2()},   {"O_q(P)", e.oqp()},
        {"U_q(sl_2)", e.uq()},            {"A_1", e.a1()},          {"A_2", e.a2()},
        {"A_12", e.a12()},                {"B_12", presentationB12()}};
    for (const auto& [name, p] : pres) {
        bool ok = true;
        std::string witness;
        for (const auto& rel : p->relations()) {
            RawTerms lhs = p->normalizeWord(rel.lhs);
            for (const auto& [w, c] : rel.rhs)
                for (const auto& [m, v] : p->normalizeWord(w, c)) {
                    auto it = lhs.find(m);
                    if (it == lhs.end())
                        lhs.emplace(m, -v);
                    else {
                        it->second -= v;
                        if (it->second.isZero()) lhs.erase(it);
                    }
                }
            if (!lhs.empty()) {
                ok = false;
                witness = rel.name + " -> " + renderTerms(*p, lhs);
                break;
            }
        }
        record(r, "defining relations of " + name + " normalize to 0", ok, witness);
        ConfluenceReport cr = checkConfluence(p, 5, e.config().threads);
        record(r, "local confluence of " + name + " (overlaps <= 5)", cr.clean(),
               cr.clean() ? std::to_string(cr.wordsChecked) + " words checked" : cr.violations[0],
               "overlap length 5");
    }
    // negative control: a deliberately inconsistent rule set is reported
    {
        auto bad = std::make_shared<Presentation>("inconsistent");
        int x = bad->addGenerator({"x", "", false, 1, 0});
        int y = bad->addGenerator({"y", "", false, 1, 0});
        RawTerms one;
        one[Monomial::unit()] = RatQ::one();
        bad->addRule(RuleKey{x, 1, y, 1}, one);
        bad->addRule(RuleKey{y, 1, x, 1}, RawTerms{});
        // x*y*x reduces to x (via xy->1) and to 0 (via yx->0)
        ConfluenceReport cr = checkConfluence(bad, 3, e.config().threads);
        record(r, "deliberately inconsistent rule set is detected", !cr.clean(),
               cr.clean() ? "no violation found" : cr.violations[0]);
    }
    // classical limit: q-commutators of distinct generators vanish at q = 1
    // (function algebras only; U_q(sl_2) is noncommutative at q = 1)
    for (const auto& [name, p] : pres) {
        if (name == "U_q(sl_2)") continue;
        bool ok = true;
        std::string witness;
        for (int g1 = 0; g1 < p->generatorCount() && ok; ++g1)
            for (int g2 = 0; g2 < p->generatorCount() && ok; ++g2) {
                if (g1 == g2) continue;
                Element comm = Element::word(p, {{g1, 1}, {g2, 1}}) -
                               Element::word(p, {{g2, 1}, {g1, 1}});
                if (!comm.specializeQ(1).empty()) {
                    ok = false;
                    witness = p->gen(g1).name + "," + p->gen(g2).name;
                }
            }
        record(r, "q-commutators of " + name + " vanish at q = 1", ok, witness, "q0 = 1");
    }
    return r;
}

// ---------------------------------------------------------------------------

Report suiteHopf(const Engine& e) {
    Report r;
    r.suite = "hopf";
    const Config& cfg = e.config();
    {
        auto hc = checkHopfAxioms(e.sl2(), cfg.axiomDegree, cfg.axiomDegree);
        record(r, "Hopf axioms on O_q(SL_2) (coassociativity, counit, antipode)", hc.ok,
               hc.ok ? std::to_string(hc.monomialsChecked) + " monomials" : hc.firstFailure,
               "degree <= " + std::to_string(cfg.axiomDegree));
        auto hp = checkHopfAxioms(e.oqp(), cfg.axiomDegree, cfg.axiomDegree);
        record(r, "Hopf axioms on O_q(P)", hp.ok,
               hp.ok ? std::to_string(hp.monomialsChecked) + " monomials" : hp.firstFailure,
               "degree <= " + std::to_string(cfg.axiomDegree));
        auto hu = checkHopfAxioms(e.uq(), 6, 2);
        record(r, "Hopf axioms on U_q(sl_2)", hu.ok,
               hu.ok ? std::to_string(hu.monomialsChecked) + " monomials" : hu.firstFailure,
               "PBW exponents <= 2");
    }
    {
        auto cc = checkComoduleAxioms(*e.coactionOnA(), cfg.coactionDegree, cfg.coactionDegree);
        record(r, "delta_R = (id (x) pi) Delta is a comodule-algebra coaction", cc.ok,
               cc.ok ? std::to_string(cc.checked) + " monomials" : cc.firstFailure,
               "degree <= " + std::to_string(cfg.coactionDegree));
    }
    // antipode derived, not hard-coded: S(alpha) = delta etc.
    {
        const PresPtr& p = e.sl2();
        Space sp{"sl2", p, nullptr};
        bool ok = antipode(evalText(e, sp, "alpha")) == evalText(e, sp, "delta") &&
                  antipode(evalText(e, sp, "beta")) == evalText(e, sp, "-q*beta") &&
                  antipode(evalText(e, sp, "gamma")) == evalText(e, sp, "-q^-1*gamma") &&
                  antipode(evalText(e, sp, "delta")) == evalText(e, sp, "alpha");
        record(r, "solved antipode: S(a)=d, S(b)=-q b, S(c)=-q^-1 c, S(d)=a", ok);
    }
    // bialgebra pairing identity <Delta u, x (x) y> = <u, xy>
    {
        const DualPairing& dp = e.pairing();
        const PresPtr& U = e.uq();
        const PresPtr& A = e.sl2();
        int Eg = U->generatorIndex("E"), Fg = U->generatorIndex("F"), Kg = U->generatorIndex("K");
        std::vector<std::pair<std::string, Element>> functionals = {
            {"E", Element::generator(U, Eg, 1)},
            {"F", Element::generator(U, Fg, 1)},
            {"K", Element::generator(U, Kg, 1)},
            {"Kinv", Element::generator(U, Kg, -1)},
            {"EF", Element::word(U, {{Eg, 1}, {Fg, 1}})},
            {"KF", Element::word(U, {{Kg, 1}, {Fg, 1}})},
            {"EK", Element::word(U, {{Eg, 1}, {Kg, 1}})},
            {"K2", Element::generator(U, Kg, 2)}};
        bool ok = true;
        std::string witness;
        for (const auto& [nm, u] : functionals) {
            TensorElement du = coproduct(u);
            for (int x = 0; x < A->generatorCount() && ok; ++x)
                for (int y = 0; y < A->generatorCount() && ok; ++y) {
                    Element ex = Element::generator(A, x, 1);
                    Element ey = Element::generator(A, y, 1);
                    RatQ lhs = RatQ::zero();
                    for (const auto& [k, v] : du.terms)
                        lhs += v * dp.pair(Element(U, RawTerms{{k.first, RatQ::one()}}), ex) *
                               dp.pair(Element(U, RawTerms{{k.second, RatQ::one()}}), ey);
                    RatQ rhs = dp.pair(u, ex * ey);
                    if (!(lhs == rhs)) {
                        ok = false;
                        witness = nm + " on " + A->gen(x).name + "," + A->gen(y).name;
                    }
                }
        }
        record(r, "bialgebra pairing <Delta u, x (x) y> = <u, xy> for E,F,K,Kinv,EF,KF,EK,K^2", ok,
               witness);
    }
    // pairing table and convolution examples
    {
        const DualPairing& dp = e.pairing();
        const PresPtr& U = e.uq();
        const PresPtr& A = e.sl2();
        int Kg = U->generatorIndex("K");
        bool ok = dp.pair(Element::generator(U, Kg, 1),
                          Element::generator(A, A->generatorIndex("alpha"), 1)) == RatQ::rPow(1);
        record(r, "K(alpha) = q^(1/2)", ok);
        Element beta = Element::generator(A, A->generatorIndex("beta"), 1);
        Element conv = dp.convolve(Element::generator(U, Kg, 2), beta);
        record(r, "convolve(K^2, beta) = q^-1 beta", conv == beta.scaled(RatQ::qPow(-1)),
               conv.str());
    }
    // coinvariants: fundamental splitting round trip on O_q(P)
    {
        const PresPtr& H = e.oqp();
        bool ok = true;
        std::string witness;
        for (const auto& m : H->monomialWindow(e.config().axiomDegree, e.config().axiomDegree)) {
            Element x(H, RawTerms{{m, RatQ::one()}});
            TensorElement split = coinvariantSplit(x);
            // first tensor factor coinvariant, round trip identity
            Coaction co = coactionFromCoproduct(H);
            for (const auto& [k, v] : split.terms) {
                if (!co.isCoinvariant(Element(H, RawTerms{{k.first, RatQ::one()}}))) {
                    ok = false;
                    witness = "non-coinvariant split factor on " + x.str();
                }
            }
            if (!(coinvariantSplitInverse(split) == x)) {
                ok = false;
                witness = "round trip failed on " + x.str();
            }
            if (!ok) break;
        }
        record(r, "fundamental splitting m -> m0 S(m1) (x) m2 round trips on O_q(P)", ok, witness,
               "degree <= " + std::to_string(e.config().axiomDegree));
    }
    // coinvariant basis of A_1 at Z-degree 0
    {
        auto basis = coinvariantBasis(*e.coactionOnA1(), 0, 3, 3);
        bool ok = basis.size() == 2;  // 1 and u within |degree| <= 3
        for (const auto& x : basis)
            if (!e.coactionOnA1()->isCoinvariant(x)) ok = false;
        std::string witness;
        for (const auto& x : basis) witness += x.str() + "; ";
        record(r, "coinvariants of A_1 at weight 0 are spanned by powers of u = gamma ainv", ok,
               witness, "|degree| <= 3, bound 3");
    }
    return r;
}

// ---------------------------------------------------------------------------

Report suite4dPlus(const Engine& e) {
    Report r;
    r.suite = "calculus-4dplus";
    const CalcPtr& c = e.calc4d();
    const PresPtr& A = e.sl2();
    int Ag = A->generatorIndex("alpha"), Bg = A->generatorIndex("beta");
    int Cg = A->generatorIndex("gamma"), Dg = A->generatorIndex("delta");
    Space sp{"sl2", A, c};

    {
        WellDefinedReport wd = checkWellDefined(c);
        record(r, "d(r) = 0 and right-action consistency for every O_q(SL_2) relation", wd.ok,
               wd.ok ? std::to_string(wd.checked) + " relations" : wd.firstFailure);
    }
    // alpha and gamma columns reproduce (commrel) verbatim
    {
        auto checkAction = [&](const std::string& formLhs, const std::string& rhs,
                               const std::string& anchor) {
            ExprPtr le = parseExpr(formLhs);
            ExprPtr re = parseExpr(rhs);
            Value lv = evaluate(le, sp), rv = evaluate(re, sp);
            bool ok = std::holds_alternative<OneForm>(lv) && std::holds_alternative<OneForm>(rv) &&
                      std::get<OneForm>(lv) == std::get<OneForm>(rv);
            record(r, anchor, ok, renderValue(lv));
        };
        checkAction("w1*alpha", "q*alpha*w1", "w1 a = q a w1");
        checkAction("w2*alpha", "alpha*w2", "w2 a = a w2");
        checkAction("w3*alpha", "alpha*w3 - q^-1*(q^-1 - q)*beta*w1", "w3 a = a w3 - q^-1 l b w1");
        checkAction("w4*alpha", "q^-1*alpha*w4 - (q^-1 - q)*beta*w2", "w4 a = q^-1 a w4 - l b w2");
        checkAction("w1*gamma", "q*gamma*w1", "w1 c = q c w1");
        checkAction("w2*gamma", "gamma*w2", "w2 c = c w2");
        checkAction("w3*gamma", "gamma*w3 - q^-1*(q^-1 - q)*delta*w1", "w3 c = c w3 - q^-1 l d w1");
        checkAction("w4*gamma", "q^-1*gamma*w4 - (q^-1 - q)*delta*w2", "w4 c = q^-1 c w4 - l d w2");
    }
    // d-table
    {
        auto checkD = [&](const std::string& lhs, const std::string& rhs, const std::string& anchor) {
            Value lv = evaluate(parseExpr(lhs), sp), rv = evaluate(parseExpr(rhs), sp);
            bool ok = std::get<OneForm>(lv) == std::get<OneForm>(rv);
            record(r, anchor, ok, renderValue(lv));
        };
        checkD("d(alpha)", "((q-1)/(q^-1-q))*alpha*w1 + ((q^-1-1)/(q^-1-q))*alpha*w4 - beta*w2",
               "d a = ((q-1)/l) a w1 + ((q^-1-1)/l) a w4 - b w2");
        checkD("d(gamma)", "((q-1)/(q^-1-q))*gamma*w1 + ((q^-1-1)/(q^-1-q))*gamma*w4 - delta*w2",
               "d c = ((q-1)/l) c w1 + ((q^-1-1)/l) c w4 - d w2");
    }
    // the printed constant Q is inconsistent; the forced value is flagged
    {
        std::string w = "printed Q = (l^2(q^-1+1)-1)/l = " + RatQ::bigQPrinted().str() +
                        "; Leibniz on the determinant forces Q = (q^-1(l^2+1)-1)/l = " +
                        RatQ::bigQ().str() + "; with the printed value the table completion has "
                        "no solution";
        flagged(r, "coefficient Q in d b = Q b w1 + ((q-1)/l) b w4 - a w3", w);
        Value db = evaluate(parseExpr("d(beta)"), sp);
        OneForm expected = leftMul(Element::generator(A, Bg, 1).scaled(RatQ::bigQ()),
                                   OneForm::basis(c, 0)) +
                           leftMul(Element::generator(A, Bg, 1).scaled(
                                       (RatQ::q() - RatQ::one()) / RatQ::lambda()),
                                   OneForm::basis(c, 3)) +
                           leftMul(-Element::generator(A, Ag, 1), OneForm::basis(c, 2));
        record(r, "d b = Q b w1 + ((q-1)/l) b w4 - a w3 with the forced Q",
               std::get<OneForm>(db) == expected, renderValue(db));
    }
    // solver unique + f-matrix convolution cross-check on the solved columns
    {
        const DualPairing& dp = e.pairing();
        const PresPtr& U = e.uq();
        int Eg = U->generatorIndex("E"), Fg = U->generatorIndex("F"), Kg = U->generatorIndex("K");
        const RatQ lam = RatQ::lambda();
        // f-matrix rows: f^1 = (K^2,0,0,0); f^2 = (-q^-3/2 l KF, eps, 0, 0);
        // f^3 = (-q^-3/2 l EK, 0, eps, 0); row 4 partial: f^4_1 = q^-1 l^2 EF, f^4_4 = K^-2.
        auto convTerm = [&](const Element& f, const Element& x) { return dp.convolve(f, x); };
        Element K2 = Element::generator(U, Kg, 2);
        Element Km2 = Element::generator(U, Kg, -2);
        Element KF = Element::word(U, {{Kg, 1}, {Fg, 1}});
        Element EK = Element::word(U, {{Eg, 1}, {Kg, 1}});
        Element EF = Element::word(U, {{Eg, 1}, {Fg, 1}});
        bool ok = true;
        std::string witness;
        for (int g : {Ag, Bg, Cg, Dg}) {
            Element x = Element::generator(A, g, 1);
            // row 1: w1 x = (K^2 * x) w1
            OneForm lhs = rightMulLetter(OneForm::basis(c, 0), g, 1);
            OneForm rhs = leftMul(convTerm(K2, x), OneForm::basis(c, 0));
            if (!(lhs == rhs)) { ok = false; witness = "row 1 on " + x.str(); }
            // row 2: w2 x = -q^-3/2 l (KF * x) w1 + x w2
            lhs = rightMulLetter(OneForm::basis(c, 1), g, 1);
            rhs = leftMul(convTerm(KF, x).scaled(-(RatQ::rPow(-3) * lam)), OneForm::basis(c, 0)) +
                  leftMul(x, OneForm::basis(c, 1));
            if (!(lhs == rhs)) { ok = false; witness = "row 2 on " + x.str(); }
            // row 3: w3 x = -q^-3/2 l (EK * x) w1 + x w3
            lhs = rightMulLetter(OneForm::basis(c, 2), g, 1);
            rhs = leftMul(convTerm(EK, x).scaled(-(RatQ::rPow(-3) * lam)), OneForm::basis(c, 0)) +
                  leftMul(x, OneForm::basis(c, 2));
            if (!(lhs == rhs)) { ok = false; witness = "row 3 on " + x.str(); }
            // row 4 partial: the w1 and w4 components match q^-1 l^2 EF and K^-2
            lhs = rightMulLetter(OneForm::basis(c, 3), g, 1);
            Element w1part = convTerm(EF, x).scaled(RatQ::qPow(-1) * lam * lam);
            Element w4part = convTerm(Km2, x);
            auto it1 = lhs.comps.find(0);
            auto it4 = lhs.comps.find(3);
            Element got1 = it1 == lhs.comps.end() ? Element::zero(A) : it1->second;
            Element got4 = it4 == lhs.comps.end() ? Element::zero(A) : it4->second;
            if (!(got1 == w1part) || !(got4 == w4part)) { ok = false; witness = "row 4 on " + x.str(); }
        }
        record(r, "solved table columns match the f-matrix convolution oracle", ok, witness);
        // w1 b = q^-1 b w1 against convolve(K^2, .) specifically
        OneForm lhs = rightMulLetter(OneForm::basis(c, 0), Bg, 1);
        OneForm rhs = leftMul(convTerm(K2, Element::generator(A, Bg, 1)), OneForm::basis(c, 0));
        record(r, "w1 b = q^-1 b w1 matches the convolve(K^2, .) oracle",
               lhs == rhs && lhs == leftMul(Element::generator(A, Bg, 1).scaled(RatQ::qPow(-1)),
                                            OneForm::basis(c, 0)),
               lhs.str());
    }
    // the implied chi_2, chi_3 functionals, recorded without a closed form
    {
        // w4 row: w4 x = ... + l (chi2 * x) w2 + l (chi3 * x) w3 + ...
        const RatQ li = RatQ::lambda().inv();
        std::string w = "on generators: chi2* acts as (a,b,c,d) -> (";
        bool first = true;
        for (int g : {Ag, Bg, Cg, Dg}) {
            OneForm row = rightMulLetter(OneForm::basis(c, 3), g, 1);
            auto it = row.comps.find(1);
            Element val = (it == row.comps.end() ? Element::zero(A) : it->second).scaled(li);
            w += (first ? "" : ", ") + val.str();
            first = false;
        }
        w += "); chi3* as (";
        first = true;
        for (int g : {Ag, Bg, Cg, Dg}) {
            OneForm row = rightMulLetter(OneForm::basis(c, 3), g, 1);
            auto it = row.comps.find(2);
            Element val = (it == row.comps.end() ? Element::zero(A) : it->second).scaled(li);
            w += (first ? "" : ", ") + val.str();
            first = false;
        }
        w += ")";
        pass(r, "implied chi_2, chi_3 convolution values (no closed form asserted)", w);
    }
    // Leibniz property on random pairs
    {
        Sampler s(411);
        auto window = A->monomialWindow(3, 3);
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            Element x = s.element(A, window, 2);
            Element y = s.element(A, window, 2);
            ok = differentiate(c, x * y) == rightMul(differentiate(c, x), y) + leftMul(x, differentiate(c, y));
        }
        record(r, "Leibniz d(xy) = (dx)y + x dy on 200 random degree-<=3 pairs", ok, "", "200 samples");
    }
    // Gamma = A dA: the solved expressions evaluate to the basis forms
    {
        bool ok = true;
        std::string witness;
        for (int i = 0; i < c->labelCount(); ++i) {
            OneForm acc = OneForm::zero(c);
            for (const auto& [a, b] : c->formExprs.at(i)) acc = acc + leftMul(a, differentiate(c, b));
            if (!(acc == OneForm::basis(c, i))) {
                ok = false;
                witness = c->labels[static_cast<std::size_t>(i)];
            }
        }
        record(r, "each basis form is a verified A·dA expression (Gamma = A dA)", ok, witness,
               "window degree <= 3");
        // w2 = q^-1 c d(a) - a d(c), the paper's printed identity
        Value v = evaluate(parseExpr("q^-1*gamma*d(alpha) - alpha*d(gamma)"), sp);
        record(r, "q^-1 c d(a) - a d(c) = w2", std::get<OneForm>(v) == OneForm::basis(c, 1),
               renderValue(v));
    }
    // right coaction data: well-defined and explicit
    {
        bool ok = c->formCoaction.has_value();
        std::string w;
        if (ok) {
            GammaTensor g = coactRight(OneForm::basis(c, 1));
            GammaTensor expect = GammaTensor::zero(c, e.oqp());
            expect.addTerm(1, Monomial::unit(),
                           Monomial::gen(e.oqp()->generatorIndex("t"), 2), RatQ::one());
            ok = g == expect;
            w = g.str();
        }
        record(r, "Delta_R(w2) = w2 (x) t^2 (computed via the A·dA expression)", ok, w);
        // d is right H-colinear: Delta_R(d a) = d(a0) (x) a1 on generators
        bool col = true;
        for (int g : {Ag, Bg, Cg, Dg}) {
            Element x = Element::generator(A, g, 1);
            GammaTensor lhs = coactRight(differentiate(c, x));
            GammaTensor rhs = GammaTensor::zero(c, e.oqp());
            TensorElement dx = e.coactionOnA()->apply(x);
            for (const auto& [k, v] : dx.terms) {
                OneForm f = differentiate(c, Element(A, RawTerms{{k.first, v}}));
                for (const auto& [lab, el] : f.comps)
                    for (const auto& [am, ac] : el.terms()) rhs.addTerm(lab, am, k.second, ac);
            }
            if (!(lhs == rhs)) col = false;
        }
        record(r, "Delta_R(d a) = d(a0) (x) a1 on generators", col);
    }
    // classical limit of the commutation tables at q0 = 1, spot checks at 2,3,5
    {
        bool ok = true;
        std::string witness;
        for (int g : {Ag, Bg, Cg, Dg}) {
            const auto& T = c->table(g, 1);
            for (int i = 0; i < 4 && ok; ++i)
                for (int j = 0; j < 4 && ok; ++j) {
                    auto fp = T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].specializeQ(1);
                    if (i == j) {
                        if (fp.size() != 1 || fp.begin()->first != Monomial::gen(g, 1) ||
                            fp.begin()->second != 1) {
                            ok = false;
                            witness = "diagonal entry " + std::to_string(i);
                        }
                    } else if (!fp.empty()) {
                        ok = false;
                        witness = A->gen(g).name + " off-diagonal (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")";
                    }
                }
        }
        record(r, "at q0 = 1 every commutation table becomes the commutative module structure", ok,
               witness, "q0 = 1");
        bool spot = true;
        for (long q0 : e.config().qPoints) {
            Rational p0(q0);
            RatQ c1 = (RatQ::q() - RatQ::one()) / RatQ::lambda();
            if (c1.evalAt(p0) != Rational(-q0, 1 + q0)) spot = false;
            if (RatQ::lambda().evalAt(p0) != Rational(1, q0) - Rational(q0)) spot = false;
        }
        record(r, "coefficient identities spot-checked at q0 in {2,3,5}", spot, "", "q0 = 2,3,5");
    }
    return r;
}

// ---------------------------------------------------------------------------

Report suiteQuotientP(const Engine& e) {
    Report r;
    r.suite = "quotient-p";
    const CalcPtr& cp = e.calcP();
    const PresPtr& H = e.oqp();
    int T = H->generatorIndex("t"), P = H->generatorIndex("p");
    Space sp{"p", H, cp};

    record(r, "[w1] = 0 and [w2] = 0 in the quotient",
           cp->labelCount() == 2 && cp->labels[0] == "wb3" && cp->labels[1] == "wb4",
           "surviving labels: " + cp->labels[0] + ", " + cp->labels[1]);
    {
        WellDefinedReport wd = checkWellDefined(cp);
        record(r, "quotient calculus well-defined on every O_q(P) relation", wd.ok,
               wd.ok ? "" : wd.firstFailure);
    }
    auto checkForm = [&](const std::string& lhs, const std::string& rhs, const std::string& anchor) {
        Value lv = evaluate(parseExpr(lhs), sp), rv = evaluate(parseExpr(rhs), sp);
        bool ok = std::get<OneForm>(lv) == std::get<OneForm>(rv);
        record(r, anchor, ok, renderValue(lv));
    };
    checkForm("d(t)", "((q^-1-1)/(q^-1-q))*t*wb4", "d t = ((q^-1-1)/l) t wb4");
    checkForm("d(p)", "-t*wb3 + ((q-1)/(q^-1-q))*p*wb4", "d p = -t wb3 + ((q-1)/l) p wb4");
    checkForm("d(tinv)", "((q-1)/(q^-1-q))*tinv*wb4", "d tinv = ((q-1)/l) tinv wb4");
    checkForm("wb3*t", "t*wb3", "wb3 t = t wb3");
    checkForm("wb3*p", "p*wb3", "wb3 p = p wb3");
    // the paper's printed wb4 entries are inconsistent with its own d-table;
    // the engine output is pinned exactly and the discrepancy is flagged
    checkForm("wb4*t", "q^-1*t*wb4", "wb4 t = q^-1 t wb4 (Leibniz-forced)");
    checkForm("wb4*p", "q*p*wb4 - (q^-1-q)*t*wb3", "wb4 p = q p wb4 - l t wb3 (Leibniz-forced)");
    {
        Value v = evaluate(parseExpr("wb4*t"), sp);
        flagged(r, "paper prints wb4 t = t wb4; computed " + renderValue(v),
                "the printed table violates d(t tinv) = 0 given d t = ((q^-1-1)/l) t wb4; no "
                "left-module basis rescaling removes the q-weight");
        Value v2 = evaluate(parseExpr("wb4*p"), sp);
        flagged(r, "paper prints wb4 p = p wb4 - l tinv wb3; computed " + renderValue(v2),
                "the printed table violates d(tp - q^-1 pt) = 0 given the printed d t, d p");
    }
    // d(delta alpha) class: the w1 class of d applied to the delta*alpha word
    {
        OneForm da = differentiateWord(e.calc4d(), {{e.sl2()->generatorIndex("delta"), 1},
                                                    {e.sl2()->generatorIndex("alpha"), 1}});
        // its image in the quotient must vanish (it equals lambda * [w1])
        bool hasW1 = da.comps.count(0) && da.comps.at(0).isScalar() &&
                     da.comps.at(0).scalarValue() == RatQ::lambda();
        record(r, "d(delta alpha) = lambda w1 + (ideal terms); its class forces [w1] = 0", hasW1,
               da.str());
    }
    (void)T;
    (void)P;
    return r;
}

// ---------------------------------------------------------------------------

Report suiteLocalization(const Engine& e) {
    Report r;
    r.suite = "localization";
    const CalcPtr& c1 = e.calcA1();
    const CalcPtr& c2 = e.calcA2();
    Space s1{"a1", e.a1(), c1};
    Space s2{"a2", e.a2(), c2};

    {
        Value v = evaluate(parseExpr("d(ainv)"), s1);
        Value expect = evaluate(
            parseExpr("((q^-1-1)/(q^-1-q))*ainv*w1 + ((q-1)/(q^-1-q))*ainv*w4 + ainv^2*beta*w2"),
            s1);
        record(r, "d ainv = ((q^-1-1)/l) ainv w1 + ((q-1)/l) ainv w4 + ainv^2 b w2",
               std::get<OneForm>(v) == std::get<OneForm>(expect), renderValue(v));
    }
    {
        int Ag = e.a1()->generatorIndex("alpha");
        bool ok = true;
        for (int i = 0; i < c1->labelCount(); ++i) {
            OneForm w = OneForm::basis(c1, i);
            if (!(rightMulLetter(rightMulLetter(w, Ag, -1), Ag, 1) == w)) ok = false;
        }
        record(r, "(w^i ainv) a = w^i for all i", ok);
        bool okd = differentiateWord(c1, {{Ag, 1}, {Ag, -1}}).isZero() &&
                   differentiateWord(c1, {{Ag, -1}, {Ag, 1}}).isZero();
        record(r, "d(a ainv) = d(ainv a) = 0", okd);
        int Cg = e.a2()->generatorIndex("gamma");
        bool okg = differentiateWord(c2, {{Cg, 1}, {Cg, -1}}).isZero() &&
                   differentiateWord(c2, {{Cg, -1}, {Cg, 1}}).isZero();
        record(r, "d(c cinv) = d(cinv c) = 0", okg);
    }
    // d(ginv): Leibniz-forced value, printed formula flagged
    {
        Value v = evaluate(parseExpr("d(ginv)"), s2);
        Value expect = evaluate(
            parseExpr("((q^-1-1)/(q^-1-q))*ginv*w1 + ((q-1)/(q^-1-q))*ginv*w4 + q^2*delta*ginv^2*w2"),
            s2);
        record(r, "d ginv carries the Leibniz-forced delta term ginv^2 d w2",
               std::get<OneForm>(v) == std::get<OneForm>(expect), renderValue(v));
        flagged(r,
                "paper prints d ginv with a ginv^2 beta w2 term; the Leibniz identity d(ginv c) = 0 "
                "forces the delta term instead",
                "computed: " + renderValue(v));
    }
    // embed is a calculus morphism on random elements
    {
        Sampler s(1313);
        auto window = e.sl2()->monomialWindow(3, 3);
        bool ok = true;
        for (int i = 0; i < 100 && ok; ++i) {
            Element x = s.element(e.sl2(), window, 2);
            OneForm dx = differentiate(e.calc4d(), x);
            OneForm pushed = OneForm::zero(c1);
            for (const auto& [lab, el] : dx.comps) pushed.addTerm(lab, e.locA1().embed.apply(el));
            ok = differentiate(c1, e.locA1().embed.apply(x)) == pushed;
        }
        record(r, "d_loc(embed(x)) = embed(d x) on 100 random degree-<=3 elements", ok, "",
               "100 samples");
    }
    // iterated localization order independence
    {
        bool ok = true;
        std::string witness;
        try {
            iterateLocalization(e.sl2(), "alpha", "gamma", 100);
        } catch (const OrderDependenceDetected& ex) {
            ok = false;
            witness = ex.what();
        }
        record(r, "A[ainv][ginv] = A[ginv][ainv]: identical rules, identical embeddings", ok,
               witness, "100 samples");
    }
    // localized coaction
    {
        Value u = evaluate(parseExpr("gamma*ainv"), s1);
        bool ok = e.coactionOnA1()->isCoinvariant(std::get<Element>(u));
        record(r, "delta_R(u) = u (x) 1 for u = gamma ainv", ok);
        TensorElement da = e.coactionOnA1()->apply(
            Element::generator(e.a1(), e.a1()->generatorIndex("alpha"), -1));
        TensorElement expect = TensorElement::simple(
            e.a1(), e.oqp(), Monomial::gen(e.a1()->generatorIndex("alpha"), -1),
            Monomial::gen(e.oqp()->generatorIndex("t"), -1), RatQ::one());
        record(r, "delta_R(ainv) = ainv (x) tinv", da == expect);
        auto cc = checkComoduleAxioms(*e.coactionOnA1(), 3, 2);
        record(r, "localized coaction satisfies the comodule axioms", cc.ok,
               cc.ok ? "" : cc.firstFailure, "degree <= 3");
    }
    // base coordinates
    {
        Value du = evaluate(parseExpr("d(gamma*ainv)"), s1);
        Value expect = evaluate(parseExpr("-(ainv^2)*w2"), s1);
        record(r, "d1 u = -ainv^2 w2", std::get<OneForm>(du) == std::get<OneForm>(expect),
               renderValue(du));
        Value dv = evaluate(parseExpr("d(alpha*ginv)"), s2);
        Value expect2 = evaluate(parseExpr("q*ginv^2*w2"), s2);
        record(r, "d2 v = q ginv^2 w2", std::get<OneForm>(dv) == std::get<OneForm>(expect2),
               renderValue(dv));
    }
    return r;
}

// ---------------------------------------------------------------------------

Report suiteSmash(const Engine& e) {
    Report r;
    r.suite = "smash";
    const SmashContext& s1 = e.smashU1();
    const SmashContext& s2 = e.smashU2();
    {
        auto cv = verifyCleaving(s1.cm, 3, 3);
        record(r, "cleaving axioms for j1 (algebra map, colinear, convolution inverse, unital)",
               cv.ok, cv.ok ? "" : cv.firstFailure, "degree <= 3");
        auto cv2 = verifyCleaving(s2.cm, 3, 3);
        record(r, "cleaving axioms for j2", cv2.ok, cv2.ok ? "" : cv2.firstFailure, "degree <= 3");
    }
    // triangle action: t |> u = q^-1 u; H-action property on generators
    {
        const PresPtr& H = e.oqp();
        int T = H->generatorIndex("t"), P = H->generatorIndex("p");
        Element u = Element::generator(e.b1(), e.b1()->generatorIndex("u"), 1);
        Element act = triangle(s1.cm, s1.base, Element::generator(H, T, 1), u);
        record(r, "t |> u = q^-1 u", act == u.scaled(RatQ::qPow(-1)), act.str());
        bool assoc = true;
        std::vector<Element> hs = {Element::generator(H, T, 1), Element::generator(H, T, -1),
                                   Element::generator(H, P, 1)};
        std::vector<Element> bs = {Element::unit(e.b1()), u, u * u};
        for (const auto& h1 : hs)
            for (const auto& h2 : hs)
                for (const auto& b : bs) {
                    Element lhs = triangle(s1.cm, s1.base, h1 * h2, b);
                    Element rhs = triangle(s1.cm, s1.base, h1, triangle(s1.cm, s1.base, h2, b));
                    if (!(lhs == rhs)) assoc = false;
                }
        record(r, "(h h') |> b = h |> (h' |> b) on generator triples", assoc);
    }
    // theta_# multiplicative and round trips
    {
        Sampler s(555);
        auto bWin = e.b1()->monomialWindow(3, 3);
        auto hWin = e.oqp()->monomialWindow(3, 3);
        bool mult = true, round = true;
        for (int i = 0; i < 100 && (mult || round); ++i) {
            SmashElement x = smashOf(s1, s.element(e.b1(), bWin, 1), s.element(e.oqp(), hWin, 1));
            SmashElement y = smashOf(s1, s.element(e.b1(), bWin, 1), s.element(e.oqp(), hWin, 1));
            if (!(theta(s1, smashMul(s1, x, y)) == theta(s1, x) * theta(s1, y))) mult = false;
            if (!(thetaInv(s1, theta(s1, x)) == x)) round = false;
        }
        record(r, "theta_# multiplicative on 100 random degree-<=3 pairs", mult, "", "100 samples");
        record(r, "theta_#^-1 ∘ theta_# = id on the same samples", round, "", "100 samples");
        // and theta_# ∘ theta_#^-1 = id on random A_1 elements
        Sampler s2r(556);
        auto aWin = e.a1()->monomialWindow(3, 2);
        bool round2 = true;
        for (int i = 0; i < 50 && round2; ++i) {
            Element a = s2r.element(e.a1(), aWin, 2);
            if (!(theta(s1, thetaInv(s1, a)) == a)) round2 = false;
        }
        record(r, "theta_# ∘ theta_#^-1 = id on 50 random A_1 elements", round2, "", "50 samples");
    }
    // d_# examples and Leibniz
    {
        Element u = Element::generator(e.b1(), e.b1()->generatorIndex("u"), 1);
        SmashForm du = dSmash(s1, s1.base.iota.apply(u));
        SmashForm expect;
        expect.addB(0, Monomial::unit(), Monomial::unit(), RatQ::one());
        record(r, "d_#(b) = d_B b (x) 1 for b in B", du == expect, du.str(s1));
        int T = e.oqp()->generatorIndex("t");
        SmashForm dt = dSmash(s1, s1.cm.j.applyMonomial(Monomial::gen(T, 1)));
        bool ok = dt.bPart.empty() && !dt.hPart.empty();
        record(r, "d_#(j h) = 1 (x) d_H h lands in the H summand", ok, dt.str(s1));
        Sampler s(717);
        auto aWin = e.a1()->monomialWindow(2, 2);
        bool leib = true;
        for (int i = 0; i < 100 && leib; ++i) {
            Element x = s.element(e.a1(), aWin, 1);
            Element y = s.element(e.a1(), aWin, 1);
            SmashForm lhs = dSmash(s1, x * y);
            SmashForm rhs = smashRightMul(s1, dSmash(s1, x), y) + smashLeftMul(s1, x, dSmash(s1, y));
            if (!(lhs == rhs)) leib = false;
        }
        record(r, "d_# Leibniz on 100 random pairs (theta-transported actions)", leib, "",
               "100 samples");
    }
    // the printed eq. (125) disagrees with theta_Gamma; flagged with witness
    {
        auto [printedImage, trueProduct] = eq125Discrepancy(s1);
        flagged(r,
                "printed eq. (125) left action vs theta_Gamma transport on a = j(t), xi = d_B u (x) t",
                "theta_Gamma(printed action) = " + printedImage.str() +
                    "; a · theta_Gamma(xi) = " + trueProduct.str() +
                    "; the engine uses the transport action");
    }
    // theta_Gamma round trips on random localized one-forms
    {
        Sampler s(919);
        auto aWin = e.a1()->monomialWindow(2, 2);
        bool ok = true;
        int done = 0;
        for (int i = 0; i < 50 && ok; ++i) {
            OneForm w = s.form(e.calcA1(), aWin, 2);
            OneForm back = thetaGamma(s1, thetaGammaInv(s1, w));
            if (!(back == w)) ok = false;
            ++done;
        }
        record(r, "theta_Gamma ∘ theta_Gamma^-1 = id on 50 random localized one-forms", ok,
               "samples completed: " + std::to_string(done), "50 samples");
    }
    {
        auto rep1 = correspondenceCheck(s1, 25, 2, 2);
        record(r, "correspondence closes in both directions on U1", rep1.ok,
               rep1.ok ? "" : rep1.firstFailure);
        auto rep2 = correspondenceCheck(s2, 25, 2, 2);
        record(r, "correspondence closes in both directions on U2", rep2.ok,
               rep2.ok ? "" : rep2.firstFailure);
    }
    // negative control: perturbing the d-table breaks well-definedness
    {
        Calculus bad = *e.calc4d();
        int Ag = e.sl2()->generatorIndex("alpha");
        auto d = bad.dTable[{Ag, 1}];
        d[0] = d.count(0) ? d[0] + Element::unit(e.sl2()) : Element::unit(e.sl2());
        bad.dTable[{Ag, 1}] = d;
        WellDefinedReport wd = checkWellDefined(std::make_shared<Calculus>(bad));
        record(r, "deliberately perturbed d-table is rejected", !wd.ok,
               wd.ok ? "perturbation not detected" : wd.firstFailure);
    }
    return r;
}

// ---------------------------------------------------------------------------

Report suiteSheafP1(const Engine& e) {
    Report r;
    r.suite = "sheaf-p1";
    P1Bundle b = buildP1Bundle(e);
    const Config& cfg = e.config();
    {
        auto laws = checkPresheafLaws(b, 2, 2);
        record(r, "presheaf laws exact on all chains (identity, composition, colinearity)", laws.ok,
               laws.ok ? std::to_string(laws.checked) + " checks" : laws.firstFailure,
               "degree <= 2");
    }
    {
        OpenIndex U2 = OpenIndex::of({2}), U12 = OpenIndex::of({1, 2});
        Element v = Element::generator(e.b2(), e.b2()->generatorIndex("v"), 1);
        Element img = b.restrictionOM(U2, U12).apply(v);
        Element expect = Element::generator(e.b12(), e.b12().pres == nullptr ? 0 : e.b12().pres->generatorIndex("u"), -1);
        record(r, "r_{12,2}(v) = u^-1", img == expect, img.str());
    }
    {
        auto g = checkGluing(b, cfg);
        record(r, "O_M global sections = constants (equalizer)", g.equalizerIsConstants,
               "dim " + std::to_string(g.equalizerDim),
               "degree <= " + std::to_string(cfg.equalizerDegree));
        record(r, "F_G separation: (r1, r2) injective on the window", g.separation, g.witness,
               "degree <= " + std::to_string(cfg.separationDegree));
        record(r, "F_G gluing: matching pairs over U12 lift", g.gluing, g.witness, "degree <= 2");
    }
    {
        auto cs = checkCoinvariantSubsheaf(b, cfg);
        std::string dims;
        for (const auto& [o, d] : cs.dims) dims += o.str() + ":" + std::to_string(d) + " ";
        record(r, "F_G^coH(U_I) = O_M(U_I) on every basic open", cs.ok,
               cs.ok ? dims : cs.firstFailure,
               "degree <= " + std::to_string(cfg.windowDegree));
    }
    {
        auto bf = checkBaseFormsSubsheaf(b, cfg);
        std::string dims;
        for (const auto& [o, hr] : bf.perOpen)
            dims += o.str() + ": hor " + std::to_string(hr.dimHorizontal) + ", coinv " +
                    std::to_string(hr.dimCoinvariant) + ", int " +
                    std::to_string(hr.dimIntersection) + ", base " + std::to_string(hr.dimBase) +
                    "; ";
        record(r, "Upsilon_M = Upsilon^hor ∩ Upsilon^coH on U1 and U2", bf.ok,
               bf.ok ? dims : bf.firstFailure,
               "window degree <= " + std::to_string(cfg.baseFormsDegree));
    }
    // base calculus data (criterion 6)
    {
        Space sB1{"b1", e.b1(), e.calcB1().calc};
        int U = e.b1()->generatorIndex("u");
        OneForm du = differentiate(e.calcB1().calc, Element::generator(e.b1(), U, 1));
        OneForm duu = rightMul(du, Element::generator(e.b1(), U, 1));
        OneForm udu = leftMul(Element::generator(e.b1(), U, 1), du).scaled(RatQ::qPow(2));
        record(r, "(d1 u) u = q^2 u (d1 u)", duu == udu, duu.str());
        int V = e.b2()->generatorIndex("v");
        OneForm dv = differentiate(e.calcB2().calc, Element::generator(e.b2(), V, 1));
        OneForm dvv = rightMul(dv, Element::generator(e.b2(), V, 1));
        OneForm vdv = leftMul(Element::generator(e.b2(), V, 1), dv).scaled(RatQ::qPow(-2));
        record(r, "(d2 v) v = q^-2 v (d2 v)", dvv == vdv, dvv.str());
        // and in Gamma_A1: d1 u = -ainv^2 w2
        Space sA1{"a1", e.a1(), e.calcA1()};
        Value dua = evaluate(parseExpr("d(gamma*ainv)"), sA1);
        Value expect = evaluate(parseExpr("-(ainv^2)*w2"), sA1);
        record(r, "d1 u = -ainv^2 w2", std::get<OneForm>(dua) == std::get<OneForm>(expect),
               renderValue(dua));
        Space sA2{"a2", e.a2(), e.calcA2()};
        Value dva = evaluate(parseExpr("d(alpha*ginv)"), sA2);
        Value expect2 = evaluate(parseExpr("q*ginv^2*w2"), sA2);
        record(r, "d2 v = q ginv^2 w2", std::get<OneForm>(dva) == std::get<OneForm>(expect2),
               renderValue(dva));
    }
    {
        auto cs = constantStructureCalculus(b, 2, 2);
        record(r,
               "the chart-induced calculi on O_q(P) are isomorphic and each surjects onto the "
               "quotient calculus",
               cs.isomorphic, cs.witness, "window degree <= 2");
        flagged(r,
                "the chart-induced calculi have rank 3, not the {wb3, wb4} rank 2 of the quotient "
                "calculus",
                "j1(H) d(j1 H) contains d(ainv) + q ainv^2 d(alpha) = (1-q)(ainv w1 + ainv^2 b w2), "
                "which dies in the quotient; Prop. 3.3 iii's inverse is ill-defined here");
    }
    {
        int Ag = e.sl2()->generatorIndex("alpha");
        record(r, "quantum section check for s = a11 = alpha",
               quantumSectionCheck(e, Element::generator(e.sl2(), Ag, 1)));
    }
    // the empty open carries the zero algebra
    {
        ZeroSection z = b.emptyOpen;
        record(r, "F_G(empty) is the zero algebra (restrictions are zero maps)",
               z.contains(Element::unit(e.sl2())));
    }
    return r;
}

}  // namespace

Report runVerify(const Engine& e, const std::string& suite) {
    Report r;
    if (suite == "relations")
        r = suiteRelations(e);
    else if (suite == "hopf")
        r = suiteHopf(e);
    else if (suite == "calculus-4dplus")
        r = suite4dPlus(e);
    else if (suite == "quotient-p")
        r = suiteQuotientP(e);
    else if (suite == "localization")
        r = suiteLocalization(e);
    else if (suite == "smash")
        r = suiteSmash(e);
    else if (suite == "sheaf-p1")
        r = suiteSheafP1(e);
    else if (suite == "all") {
        Report all;
        all.suite = "all";
        all.config = e.config().header();
        for (const auto& name : suiteNames()) {
            Report part = runVerify(e, name);
            for (auto& c : part.checks) {
                c.anchor = name + ": " + c.anchor;
                all.checks.push_back(std::move(c));
            }
        }
        return all;
    } else {
        throw UnknownSuite(suite);
    }
    r.config = e.config().header();
    return r;
}

std::string emitJson(const Report& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["version"] = r.version;
    j["config"] = r.config;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["anchor"] = c.anchor;
        jc["status"] = c.status;
        jc["witness"] = c.witness;
        jc["window"] = c.window;
        j["checks"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

std::string emitText(const Report& r) {
    std::ostringstream os;
    os << "suite: " << r.suite << "\n";
    os << "version: " << r.version << "\n";
    os << "config: " << r.config << "\n";
    std::size_t width = 10;
    for (const auto& c : r.checks) width = std::max(width, c.anchor.size());
    width = std::min<std::size_t>(width, 100);
    for (const auto& c : r.checks) {
        std::string anchor = c.anchor.substr(0, 100);
        os << "  " << anchor << std::string(width - anchor.size() + 2, ' ') << "[" << c.status
           << "]";
        if (!c.window.empty()) os << "  (" << c.window << ")";
        if (!c.witness.empty() && c.status != "pass") os << "  " << c.witness;
        os << "\n";
    }
    os << "result: " << (r.allPassed() ? "all checks passed" : std::to_string(r.failures()) + " failed")
       << "\n";
    return os.str();
}

}  // namespace qpb
