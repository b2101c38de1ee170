#include "qpb/tensor.hpp"

namespace qpb {

TensorElement TensorElement::simple(PresPtr l, PresPtr r, const Monomial& lm, const Monomial& rm,
                                    const RatQ& c) {
    TensorElement t{std::move(l), std::move(r), {}};
    t.addTerm(lm, rm, c);
    return t;
}

TensorElement TensorElement::of(const Element& l, const Element& r) {
    TensorElement t{l.presentation(), r.presentation(), {}};
    for (const auto& [lm, lc] : l.terms())
        for (const auto& [rm, rc] : r.terms()) t.addTerm(lm, rm, lc * rc);
    return t;
}

void TensorElement::addTerm(const Monomial& lm, const Monomial& rm, const RatQ& c) {
    if (c.isZero()) return;
    auto key = std::pair{lm, rm};
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.isZero()) terms.erase(it);
    }
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    TensorElement r = *this;
    for (const auto& [k, c] : o.terms) r.addTerm(k.first, k.second, c);
    return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    TensorElement r = *this;
    for (const auto& [k, c] : o.terms) r.addTerm(k.first, k.second, -c);
    return r;
}

TensorElement TensorElement::scaled(const RatQ& c) const {
    TensorElement r{left, right, {}};
    for (const auto& [k, v] : terms) r.addTerm(k.first, k.second, v * c);
    return r;
}

TensorElement TensorElement::operator*(const TensorElement& o) const {
    TensorElement r{left, right, {}};
    for (const auto& [k1, c1] : terms)
        for (const auto& [k2, c2] : o.terms) {
            Word lw = k1.first.word(), lw2 = k2.first.word();
            lw.insert(lw.end(), lw2.begin(), lw2.end());
            Word rw = k1.second.word(), rw2 = k2.second.word();
            rw.insert(rw.end(), rw2.begin(), rw2.end());
            RawTerms lt = left->normalizeWord(lw, c1 * c2);
            RawTerms rt = right->normalizeWord(rw);
            for (const auto& [lm, lc] : lt)
                for (const auto& [rm, rc] : rt) r.addTerm(lm, rm, lc * rc);
        }
    return r;
}

bool TensorElement::operator==(const TensorElement& o) const {
    if (isZero() && o.isZero()) return true;
    return left == o.left && right == o.right && terms == o.terms;
}

std::string TensorElement::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms) {
        if (!out.empty()) out += " + ";
        std::string cs = c.str();
        if (cs != "1") out += "(" + cs + ")*";
        out += renderMonomial(*left, k.first) + "(x)" + renderMonomial(*right, k.second);
    }
    return out;
}

TensorElement mapTensor(const TensorElement& te, const AlgebraMap* leftMap, const AlgebraMap* rightMap) {
    PresPtr l = leftMap ? leftMap->dst : te.left;
    PresPtr r = rightMap ? rightMap->dst : te.right;
    TensorElement out{l, r, {}};
    for (const auto& [k, c] : te.terms) {
        Element le = leftMap ? leftMap->applyMonomial(k.first)
                             : Element(te.left, RawTerms{{k.first, RatQ::one()}});
        Element re = rightMap ? rightMap->applyMonomial(k.second)
                              : Element(te.right, RawTerms{{k.second, RatQ::one()}});
        for (const auto& [lm, lc] : le.terms())
            for (const auto& [rm, rc] : re.terms()) out.addTerm(lm, rm, c * lc * rc);
    }
    return out;
}

void Tensor3::addTerm(const Monomial& a, const Monomial& b, const Monomial& c, const RatQ& v) {
    if (v.isZero()) return;
    auto key = std::tuple{a, b, c};
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), v);
    } else {
        it->second += v;
        if (it->second.isZero()) terms.erase(it);
    }
}

Tensor3 Tensor3::operator+(const Tensor3& o) const {
    Tensor3 r = *this;
    for (const auto& [k, c] : o.terms) r.addTerm(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
    return r;
}

Tensor3 Tensor3::operator-(const Tensor3& o) const {
    Tensor3 r = *this;
    for (const auto& [k, c] : o.terms) r.addTerm(std::get<0>(k), std::get<1>(k), std::get<2>(k), -c);
    return r;
}

bool Tensor3::operator==(const Tensor3& o) const {
    if (isZero() && o.isZero()) return true;
    return p1 == o.p1 && p2 == o.p2 && p3 == o.p3 && terms == o.terms;
}

std::string Tensor3::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms) {
        if (!out.empty()) out += " + ";
        std::string cs = c.str();
        if (cs != "1") out += "(" + cs + ")*";
        out += renderMonomial(*p1, std::get<0>(k)) + "(x)" + renderMonomial(*p2, std::get<1>(k)) +
               "(x)" + renderMonomial(*p3, std::get<2>(k));
    }
    return out;
}

}  // namespace qpb
