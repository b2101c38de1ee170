#include "qpb/factory.hpp"

namespace qpb {

namespace {

Monomial m2(int g1, int e1, int g2, int e2) {
    Monomial m;
    if (g1 == g2) return Monomial::gen(g1, e1 + e2);
    if (g1 < g2) {
        m.factors = {{g1, e1}, {g2, e2}};
    } else {
        m.factors = {{g2, e2}, {g1, e1}};
    }
    return m;
}

/// Registers the defining relation x*y = c*y*x (x < y) and orients the
/// rewrite as y*x -> c^-1*x*y.
void swapRelation(Presentation& p, const std::string& name, int x, int y, const RatQ& c) {
    p.addSwapRule(y, x, c.inv());
    p.addRelation({name, {{x, 1}, {y, 1}}, {{{{y, 1}, {x, 1}}, c}}});
}

}  // namespace

PresPtr presentationOqM(int n) {
    if (n < 2) throw Error("presentationOqM: need n >= 2");
    auto p = std::make_shared<Presentation>("O_q(M_" + std::to_string(n) + ")");
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            p->addGenerator({"a" + std::to_string(i) + std::to_string(j), "", false, 1, 0});
    auto idx = [n](int i, int j) { return (i - 1) * n + (j - 1); };
    const RatQ qi = RatQ::qPow(-1);
    const RatQ lam = RatQ::lambda();
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= n; ++j)
                for (int l = 1; l <= n; ++l) {
                    if (i > j || (i == j && k >= l)) continue;
                    int x = idx(i, k), y = idx(j, l);
                    std::string nm = p->gen(x).name + "*" + p->gen(y).name;
                    if (i == j || k == l) {
                        swapRelation(*p, nm, x, y, qi);
                    } else if (k > l) {
                        swapRelation(*p, nm, x, y, RatQ::one());
                    } else {
                        // diagonal pair: x y - y x = lambda * a_il a_jk
                        int u = idx(i, l), v = idx(j, k);
                        RawTerms rhs;
                        rhs[m2(x, 1, y, 1)] = RatQ::one();
                        rhs[m2(u, 1, v, 1)] = -lam;
                        p->addRule(RuleKey{y, 1, x, 1}, rhs);
                        p->addRelation({nm,
                                        {{x, 1}, {y, 1}},
                                        {{{{y, 1}, {x, 1}}, RatQ::one()}, {{{u, 1}, {v, 1}}, lam}}});
                    }
                }
    p->setTerminationNote("swaps decrease inversions; the diagonal rule is degree-preserving and "
                          "strictly decreases inversions");
    return p;
}

PresPtr presentationOqSl2() {
    // Sort order alpha < delta < beta < gamma keeps the eliminated pair
    // (alpha, delta) adjacent in sorted words, so the determinant rules always
    // fire; normal monomials are alpha^a beta^b gamma^c and delta^d beta^b gamma^c.
    auto p = std::make_shared<Presentation>("O_q(SL_2)");
    int A = p->addGenerator({"alpha", "ainv", false, 1, 1});
    int D = p->addGenerator({"delta", "", false, 1, -1});
    int B = p->addGenerator({"beta", "", false, 1, -1});
    int C = p->addGenerator({"gamma", "ginv", false, 1, 1});
    const RatQ q = RatQ::q();
    const RatQ qi = RatQ::qPow(-1);

    swapRelation(*p, "alpha*beta", A, B, qi);   // ab = q^-1 ba
    swapRelation(*p, "alpha*gamma", A, C, qi);  // ag = q^-1 ga
    swapRelation(*p, "delta*beta", D, B, q);    // bd = q^-1 db, i.e. db = q bd
    swapRelation(*p, "delta*gamma", D, C, q);   // gd = q^-1 dg
    swapRelation(*p, "beta*gamma", B, C, RatQ::one());

    // Determinant alpha delta - q^-1 beta gamma = 1; both products reduce.
    RawTerms ad;
    ad[Monomial::unit()] = RatQ::one();
    ad[m2(B, 1, C, 1)] = qi;
    p->addRule(RuleKey{A, 1, D, 1}, ad);
    RawTerms da;
    da[Monomial::unit()] = RatQ::one();
    da[m2(B, 1, C, 1)] = q;
    p->addRule(RuleKey{D, 1, A, 1}, da);
    p->addRelation({"determinant", {{A, 1}, {D, 1}}, {{{}, RatQ::one()}, {{{B, 1}, {C, 1}}, qi}}});
    p->addRelation(
        {"delta*alpha", {{D, 1}, {A, 1}}, {{{}, RatQ::one()}, {{{B, 1}, {C, 1}}, q}}});

    p->setTerminationNote(
        "swaps decrease inversions w.r.t. alpha<delta<beta<gamma; the (alpha,delta) rules "
        "strictly decrease total (alpha,delta)-degree");
    return p;
}

PresPtr presentationOqP() {
    auto p = std::make_shared<Presentation>("O_q(P)");
    int T = p->addGenerator({"t", "tinv", true, 1, 1});
    int P = p->addGenerator({"p", "", false, 1, -1});
    swapRelation(*p, "t*p", T, P, RatQ::qPow(-1));
    p->addRelation({"t*tinv", {{T, 1}, {T, -1}}, {{{}, RatQ::one()}}});
    p->addRelation({"tinv*t", {{T, -1}, {T, 1}}, {{{}, RatQ::one()}}});
    p->setTerminationNote("normal form t^k p^m, k in Z; swaps decrease inversions");
    return p;
}

PresPtr presentationUqSl2() {
    auto p = std::make_shared<Presentation>("U_q(sl_2)");
    int F = p->addGenerator({"F", "", false, 1, 0});
    int K = p->addGenerator({"K", "Kinv", true, 1, 0});
    int E = p->addGenerator({"E", "", false, 1, 0});
    // KF = q FK and KE = q^-1 EK; normal order F < K < E.
    swapRelation(*p, "K*F", F, K, RatQ::qPow(-1));  // FK = q^-1 KF, i.e. KF -> q FK
    swapRelation(*p, "K*E", K, E, RatQ::qPow(-1));  // KE = q^-1 EK, i.e. EK -> q KE
    p->addRelation({"K*Kinv", {{K, 1}, {K, -1}}, {{{}, RatQ::one()}}});
    p->addRelation({"Kinv*K", {{K, -1}, {K, 1}}, {{{}, RatQ::one()}}});
    // EF - FE = (K^2 - K^-2)/lambda
    const RatQ li = RatQ::lambda().inv();
    RawTerms rhs;
    rhs[m2(F, 1, E, 1)] = RatQ::one();
    rhs[Monomial::gen(K, 2)] = li;
    rhs[Monomial::gen(K, -2)] = -li;
    p->addRule(RuleKey{E, 1, F, 1}, rhs);
    p->addRelation({"E*F",
                    {{E, 1}, {F, 1}},
                    {{{{F, 1}, {E, 1}}, RatQ::one()},
                     {{{K, 2}}, li},
                     {{{K, -2}}, -li}}});
    p->setTerminationNote("PBW order F^a K^b E^c; all rules strictly decrease (E,F) inversions "
                          "or leave them fixed while sorting K");
    return p;
}

PresPtr presentationB1() {
    auto p = std::make_shared<Presentation>("B_1");
    p->addGenerator({"u", "uinv", false, 1, 0});
    p->setTerminationNote("free on one generator");
    return p;
}

PresPtr presentationB2() {
    auto p = std::make_shared<Presentation>("B_2");
    p->addGenerator({"v", "vinv", false, 1, 0});
    p->setTerminationNote("free on one generator");
    return p;
}

PresPtr presentationB12() {
    auto p = std::make_shared<Presentation>("B_12");
    int U = p->addGenerator({"u", "uinv", true, 1, 0});
    p->addRelation({"u*uinv", {{U, 1}, {U, -1}}, {{{}, RatQ::one()}}});
    p->setTerminationNote("Laurent polynomials in u");
    return p;
}

}  // namespace qpb
