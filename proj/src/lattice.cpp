#include "bandlab/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace bandlab {

std::vector<MultiIndex> annulusIndices(int dim, std::int64_t inner, std::int64_t outer) {
    if (outer < inner) throw std::invalid_argument("annulusIndices: outer < inner");
    std::vector<MultiIndex> out;
    Window big(dim, outer);
    for (std::int64_t f = 0; f < big.size(); ++f) {
        MultiIndex n = big.indexAt(f);
        if (n.maxNorm() > inner) out.push_back(n);
    }
    return out;
}

LatticeVector project(const LatticeVector& x, const Window& w) {
    if (x.dim() != w.dim) throw std::invalid_argument("project: dimension mismatch");
    LatticeVector out(x.dim(), x.fiberDim());
    for (const auto& [n, v] : x.entries())
        if (w.contains(n)) out.set(n, v);
    return out;
}

LatticeVector shift(const LatticeVector& x, const MultiIndex& k) {
    if (x.dim() != k.dim) throw std::invalid_argument("shift: dimension mismatch");
    LatticeVector out(x.dim(), x.fiberDim());
    for (const auto& [n, v] : x.entries()) out.set(n + k, v);
    return out;
}

double norm(const LatticeVector& x, const NormTag& t) {
    double acc = 0.0;
    for (const auto& [n, v] : x.entries()) {
        double fiber = v.norm();
        switch (t.p) {
            case NormTag::P::One: acc += fiber; break;
            case NormTag::P::Two: acc += fiber * fiber; break;
            case NormTag::P::Inf: acc = std::max(acc, fiber); break;
        }
    }
    return t.p == NormTag::P::Two ? std::sqrt(acc) : acc;
}

Vector stack(const LatticeVector& x, const Window& w) {
    if (x.dim() != w.dim) throw std::invalid_argument("stack: dimension mismatch");
    const int d = x.fiberDim();
    Vector out = Vector::Zero(w.size() * d);
    for (const auto& [n, v] : x.entries())
        if (w.contains(n)) out.segment(w.flatIndex(n) * d, d) = v;
    return out;
}

LatticeVector unstack(const Vector& v, const Window& w, int fiberDim) {
    if (v.size() != w.size() * fiberDim) throw std::invalid_argument("unstack: size mismatch");
    LatticeVector out(w.dim, fiberDim);
    for (std::int64_t f = 0; f < w.size(); ++f) {
        Vector block = v.segment(f * fiberDim, fiberDim);
        if (block.cwiseAbs().maxCoeff() != 0.0) out.set(w.indexAt(f), block);
    }
    return out;
}

}  // namespace bandlab
