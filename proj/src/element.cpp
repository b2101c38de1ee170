#include "qpb/element.hpp"

#include <sstream>

namespace qpb {

Element Element::scalar(PresPtr p, const RatQ& c) {
    RawTerms t;
    if (!c.isZero()) t[Monomial::unit()] = c;
    return Element(std::move(p), std::move(t));
}

Element Element::generator(PresPtr p, int g, int e) {
    RawTerms t = p->normalizeWord({{g, e}});
    return Element(std::move(p), std::move(t));
}

Element Element::word(PresPtr p, const Word& w, const RatQ& c) {
    RawTerms t = p->normalizeWord(w, c);
    return Element(std::move(p), std::move(t));
}

void Element::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second.isZero() ? terms_.erase(it) : std::next(it);
}

void Element::checkSame(const Element& o) const {
    if (pres_ != o.pres_) throw PresentationMismatch();
}

bool Element::isScalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.isUnit());
}

RatQ Element::scalarValue() const {
    auto it = terms_.find(Monomial::unit());
    return it == terms_.end() ? RatQ::zero() : it->second;
}

Element Element::operator+(const Element& o) const {
    if (isZero()) return o;
    if (o.isZero()) return *this;
    checkSame(o);
    Element r = *this;
    for (const auto& [m, c] : o.terms_) {
        auto it = r.terms_.find(m);
        if (it == r.terms_.end()) {
            r.terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.isZero()) r.terms_.erase(it);
        }
    }
    return r;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const {
    Element r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Element Element::scaled(const RatQ& c) const {
    if (c.isZero()) return Element(pres_);
    Element r = *this;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

Element Element::operator*(const Element& o) const {
    checkSame(o);
    Element r(pres_);
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            Word w = m1.word();
            Word w2 = m2.word();
            w.insert(w.end(), w2.begin(), w2.end());
            RawTerms part = pres_->normalizeWord(w, c1 * c2);
            for (const auto& [m, c] : part) {
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) {
                    r.terms_.emplace(m, c);
                } else {
                    it->second += c;
                    if (it->second.isZero()) r.terms_.erase(it);
                }
            }
        }
    }
    return r;
}

Element Element::pow(int n) const {
    if (n < 0) throw Error("Element::pow: negative power");
    Element acc = unit(pres_);
    for (int i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

bool Element::operator==(const Element& o) const {
    if (isZero() && o.isZero()) return true;
    return pres_ == o.pres_ && terms_ == o.terms_;
}

std::map<Monomial, Rational> Element::specializeQ(const Rational& q0) const {
    std::map<Monomial, Rational> out;
    for (const auto& [m, c] : terms_) {
        Rational v = c.evalAt(q0);
        if (v != 0) out[m] = v;
    }
    return out;
}

std::string renderMonomial(const Presentation& p, const Monomial& m) {
    if (m.isUnit()) return "1";
    std::string s;
    for (const auto& [g, e] : m.factors) {
        if (!s.empty()) s += "*";
        const auto& info = p.gen(g);
        if (e > 0) {
            s += info.name;
            if (e != 1) s += "^" + std::to_string(e);
        } else if (!info.invName.empty()) {
            s += info.invName;
            if (e != -1) s += "^" + std::to_string(-e);
        } else {
            s += info.name + "^" + std::to_string(e);
        }
    }
    return s;
}

std::string renderTerms(const Presentation& p, const RawTerms& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        RatQ coef = c;
        std::string cs = coef.str();
        bool neg = !cs.empty() && cs[0] == '-';
        bool compound = cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos;
        if (neg && !compound) {
            cs = cs.substr(1);
        } else if (neg && compound) {
            // keep sign inside the parentheses
            neg = false;
        }
        std::string body;
        if (m.isUnit()) {
            body = compound ? "(" + cs + ")" : cs;
        } else if (!compound && cs == "1") {
            body = renderMonomial(p, m);
        } else {
            body = (compound ? "(" + cs + ")" : cs) + "*" + renderMonomial(p, m);
        }
        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

std::string Element::str() const {
    if (!pres_) return "0";
    return renderTerms(*pres_, terms_);
}

Element AlgebraMap::applyMonomial(const Monomial& m, const RatQ& c) const {
    Element acc = Element::scalar(dst, c);
    for (const auto& [g, e] : m.factors) {
        const Element* img = nullptr;
        int n = e;
        if (e > 0) {
            auto it = images.find(g);
            if (it == images.end()) throw Error("AlgebraMap " + name + ": no image for generator");
            img = &it->second;
        } else {
            auto it = invImages.find(g);
            if (it == invImages.end())
                throw Error("AlgebraMap " + name + ": no image for inverse of " + src->gen(g).name);
            img = &it->second;
            n = -e;
        }
        for (int i = 0; i < n; ++i) acc = acc * *img;
    }
    return acc;
}

Element AlgebraMap::apply(const Element& x) const {
    if (x.presentation() != src) throw PresentationMismatch();
    Element acc = Element::zero(dst);
    for (const auto& [m, c] : x.terms()) acc = acc + applyMonomial(m, c);
    return acc;
}

bool AlgebraMap::respectsRelations(std::string* firstFailure) const {
    auto imageOfWord = [&](const Word& w, const RatQ& c) {
        Element acc = Element::scalar(dst, c);
        for (const auto& l : w) acc = acc * applyMonomial(Monomial::gen(l.gen, l.exp));
        return acc;
    };
    for (const auto& rel : src->relations()) {
        Element lhs = imageOfWord(rel.lhs, RatQ::one());
        Element rhs = Element::zero(dst);
        for (const auto& [w, c] : rel.rhs) rhs = rhs + imageOfWord(w, c);
        if (!(lhs == rhs)) {
            if (firstFailure) *firstFailure = rel.name;
            return false;
        }
    }
    return true;
}

AlgebraMap composeMaps(const AlgebraMap& outer, const AlgebraMap& inner) {
    if (inner.dst != outer.src) throw PresentationMismatch();
    AlgebraMap r;
    r.name = outer.name + "∘" + inner.name;
    r.src = inner.src;
    r.dst = outer.dst;
    for (const auto& [g, img] : inner.images) r.images[g] = outer.apply(img);
    for (const auto& [g, img] : inner.invImages) r.invImages[g] = outer.apply(img);
    return r;
}

AlgebraMap identityMap(const PresPtr& p) {
    AlgebraMap m;
    m.name = "id";
    m.src = m.dst = p;
    for (int g = 0; g < p->generatorCount(); ++g) {
        m.images[g] = Element::generator(p, g, 1);
        if (p->gen(g).invertible) m.invImages[g] = Element::generator(p, g, -1);
    }
    return m;
}

}  // namespace qpb
