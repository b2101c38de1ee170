#include "qpb/engine.hpp"

#include "qpb/smash.hpp"

namespace qpb {

Engine::Engine(Config cfg) : cfg_(std::move(cfg)) {
    // Presented algebras with Hopf data.
    auto sl2m = std::const_pointer_cast<Presentation>(presentationOqSl2());
    sl2m->setStepBudget(cfg_.stepBudget);
    attachHopfOqSl2(sl2m);
    sl2_ = sl2m;
    auto uqm = std::const_pointer_cast<Presentation>(presentationUqSl2());
    uqm->setStepBudget(cfg_.stepBudget);
    attachHopfUqSl2(uqm);
    uq_ = uqm;
    auto oqpm = std::const_pointer_cast<Presentation>(presentationOqP());
    oqpm->setStepBudget(cfg_.stepBudget);
    b1_ = presentationB1();
    b2_ = presentationB2();

    int A = sl2_->generatorIndex("alpha"), B = sl2_->generatorIndex("beta");
    int C = sl2_->generatorIndex("gamma"), D = sl2_->generatorIndex("delta");
    int T = oqpm->generatorIndex("t"), P = oqpm->generatorIndex("p");

    AlgebraMap pi;
    pi.name = "pi";
    pi.src = sl2_;
    pi.dst = oqpm;
    pi.images[A] = Element::generator(oqpm, T, 1);
    pi.images[B] = Element::generator(oqpm, P, 1);
    pi.images[C] = Element::zero(oqpm);
    pi.images[D] = Element::generator(oqpm, T, -1);
    attachHopfOqP(oqpm, sl2_, pi);
    oqp_ = oqpm;

    AlgebraMap section;
    section.name = "section";
    section.src = oqp_;
    section.dst = sl2_;
    section.images[T] = Element::generator(sl2_, A, 1);
    section.images[P] = Element::generator(sl2_, B, 1);
    section.invImages[T] = Element::generator(sl2_, D, 1);
    proj_ = buildHopfQuotient(sl2_, oqp_, pi, section, {Element::generator(sl2_, C, 1)});

    pairing_ = buildPairing(uq_, sl2_);

    coactA_ = std::make_shared<Coaction>(coactionFromQuotient(proj_));
    calc4d_ = build4dPlus(sl2_, coactA_);
    calcP_ = quotientCalculus(calc4d_, proj_, cfg_.windowDegree, cfg_.exponentBound);

    // Localizations.
    a1_ = localize(sl2_, "alpha");
    a2_ = localize(sl2_, "gamma");
    a12_ = localize(a1_.pres, "gamma");
    a21_ = localize(a2_.pres, "alpha");
    b12_ = localize(b1_, "u");

    coactA1_ = std::make_shared<Coaction>(extendCoaction(*coactA_, a1_.pres, "alpha"));
    coactA2_ = std::make_shared<Coaction>(extendCoaction(*coactA_, a2_.pres, "gamma"));
    coactA12_ = std::make_shared<Coaction>(extendCoaction(*coactA1_, a12_.pres, "gamma"));

    calcA1_ = extendCalculus(calc4d_, a1_, "alpha", coactA1_);
    calcA2_ = extendCalculus(calc4d_, a2_, "gamma", coactA2_);
    {
        LocalizedPresentation step{a12_.pres, a12_.embed};
        calcA12_ = extendCalculus(calcA1_, step, "gamma", coactA12_);
    }

    calcB1_ = pullbackCalculus(calcA1_, iotaB1(), 2, 2);
    calcB2_ = pullbackCalculus(calcA2_, iotaB2(), 2, 2);
    calcB12_ = pullbackCalculus(calcA12_, iotaB12(), 2, 2);

    // Chart-induced calculi on H via the cleaving maps, with coaction data.
    auto withCoactionData = [&](PullbackResult pb) {
        auto c = std::make_shared<Calculus>(*pb.calc);
        c->coaction = std::make_shared<Coaction>(coactionFromCoproduct(oqp_));
        c->formCoaction = computeFormCoactionFromColinearity(*c, 4, 2);
        pb.calc = c;
        return pb;
    };
    calcH1_ = withCoactionData(pullbackCalculus(calcA1_, cleavingJ1(), 2, 2));
    calcH2_ = withCoactionData(pullbackCalculus(calcA2_, cleavingJ2(), 2, 2));
}

AlgebraMap Engine::cleavingJ1() const {
    AlgebraMap j;
    j.name = "j1";
    j.src = oqp_;
    j.dst = a1_.pres;
    int T = oqp_->generatorIndex("t"), P = oqp_->generatorIndex("p");
    int A = a1_.pres->generatorIndex("alpha"), B = a1_.pres->generatorIndex("beta");
    j.images[T] = Element::generator(a1_.pres, A, 1);
    j.invImages[T] = Element::generator(a1_.pres, A, -1);
    j.images[P] = Element::generator(a1_.pres, B, 1);
    return j;
}

AlgebraMap Engine::cleavingJ2() const {
    AlgebraMap j;
    j.name = "j2";
    j.src = oqp_;
    j.dst = a2_.pres;
    int T = oqp_->generatorIndex("t"), P = oqp_->generatorIndex("p");
    int C = a2_.pres->generatorIndex("gamma"), D = a2_.pres->generatorIndex("delta");
    j.images[T] = Element::generator(a2_.pres, C, 1);
    j.invImages[T] = Element::generator(a2_.pres, C, -1);
    j.images[P] = Element::generator(a2_.pres, D, 1);
    return j;
}

Element Engine::u() const {
    int C = a1_.pres->generatorIndex("gamma"), A = a1_.pres->generatorIndex("alpha");
    return Element::word(a1_.pres, {{C, 1}, {A, -1}});
}

Element Engine::v() const {
    int A = a2_.pres->generatorIndex("alpha"), C = a2_.pres->generatorIndex("gamma");
    return Element::word(a2_.pres, {{A, 1}, {C, -1}});
}

AlgebraMap Engine::iotaB1() const {
    AlgebraMap m;
    m.name = "B1->A1";
    m.src = b1_;
    m.dst = a1_.pres;
    m.images[b1_->generatorIndex("u")] = u();
    return m;
}

AlgebraMap Engine::iotaB2() const {
    AlgebraMap m;
    m.name = "B2->A2";
    m.src = b2_;
    m.dst = a2_.pres;
    m.images[b2_->generatorIndex("v")] = v();
    return m;
}

AlgebraMap Engine::iotaB12() const {
    AlgebraMap m;
    m.name = "B12->A12";
    m.src = b12_.pres;
    m.dst = a12_.pres;
    int U = b12_.pres->generatorIndex("u");
    int C = a12_.pres->generatorIndex("gamma"), A = a12_.pres->generatorIndex("alpha");
    m.images[U] = Element::word(a12_.pres, {{C, 1}, {A, -1}});
    m.invImages[U] = Element::word(a12_.pres, {{A, 1}, {C, -1}});
    return m;
}

namespace {

SmashContext makeSmash(const Engine& e, bool chart1) {
    SmashContext ctx;
    ctx.cm.name = chart1 ? "j1" : "j2";
    ctx.cm.H = e.oqp();
    ctx.cm.Aloc = chart1 ? e.a1() : e.a2();
    ctx.cm.coaction = chart1 ? e.coactionOnA1() : e.coactionOnA2();
    ctx.cm.j = chart1 ? e.cleavingJ1() : e.cleavingJ2();
    ctx.base = makeBaseEmbedding(chart1 ? e.b1() : e.b2(), ctx.cm.Aloc,
                                 chart1 ? e.iotaB1() : e.iotaB2(), 8);
    ctx.calcA = chart1 ? e.calcA1() : e.calcA2();
    const PullbackResult& pb = chart1 ? e.calcB1() : e.calcB2();
    ctx.calcB = pb.calc;
    ctx.calcBOrigin = pb.origin;
    // Gamma_H is the chart pullback along j (rank 3); its A·dA expressions
    // are d(iota(origin_k)), which theta_Gamma maps back into Gamma_A.
    const PullbackResult& ph = chart1 ? e.calcHU1() : e.calcHU2();
    ctx.calcH = ph.calc;
    ctx.calcHOrigin = ph.origin;
    return ctx;
}

}  // namespace

const SmashContext& Engine::smashU1() const {
    if (!smash1_) smash1_ = std::make_shared<SmashContext>(makeSmash(*this, true));
    return *smash1_;
}

const SmashContext& Engine::smashU2() const {
    if (!smash2_) smash2_ = std::make_shared<SmashContext>(makeSmash(*this, false));
    return *smash2_;
}

}  // namespace qpb
