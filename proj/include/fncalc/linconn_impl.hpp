#pragma once

// Template definitions for linconn.hpp.

namespace fncalc {

template <std::size_t R>
Tensor<R + 1> LinearConnection::differential(const Tensor<R>& a) const {
  if (a.dim() != dim()) throw DimensionError("covariant differential: dimension mismatch");
  const std::size_t n = dim();
  Tensor<R + 1> out(n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto big = out.unflatten(f);
    const std::size_t w = big[1];
    typename Tensor<R>::Index idx{};
    idx[0] = big[0];
    for (std::size_t s = 1; s <= R; ++s) idx[s] = big[s + 1];
    Poly acc = a.at(idx).diff(w);
    const std::size_t k = idx[0];
    for (std::size_t m = 0; m < n; ++m) {
      const Poly& g = gamma_(k, w, m);
      if (g.is_zero()) continue;
      idx[0] = m;
      const Poly& am = a.at(idx);
      if (!am.is_zero()) acc += g * am;
    }
    idx[0] = k;
    for (std::size_t s = 1; s <= R; ++s) {
      const std::size_t i = idx[s];
      for (std::size_t m = 0; m < n; ++m) {
        const Poly& g = gamma_(m, w, i);
        if (g.is_zero()) continue;
        idx[s] = m;
        const Poly& am = a.at(idx);
        if (!am.is_zero()) acc -= g * am;
      }
      idx[s] = i;
    }
    out.data()[f] = std::move(acc);
  }
  return out;
}

}  // namespace fncalc
