#pragma once

// Template definitions for tensor.hpp.

namespace fncalc {

template <std::size_t R>
Tensor<R> compose(const VecForm1& a, const Tensor<R>& b) {
  if (a.dim() != b.dim()) throw DimensionError("compose: dimension mismatch");
  const std::size_t n = a.dim();
  Tensor<R> out(n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto idx = out.unflatten(f);
    const std::size_t k = idx[0];
    Poly acc(n);
    for (std::size_t m = 0; m < n; ++m) {
      const Poly& akm = a(k, m);
      if (akm.is_zero()) continue;
      idx[0] = m;
      const Poly& bm = b.at(idx);
      if (!bm.is_zero()) acc += akm * bm;
    }
    out.data()[f] = std::move(acc);
  }
  return out;
}

template <std::size_t R>
Tensor<R> precompose(const Tensor<R>& a, std::size_t slot, const VecForm1& k) {
  static_assert(R >= 1, "precompose needs an argument slot");
  if (a.dim() != k.dim()) throw DimensionError("precompose: dimension mismatch");
  if (slot >= R) throw DimensionError("precompose: slot out of range");
  const std::size_t n = a.dim();
  Tensor<R> out(n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto idx = out.unflatten(f);
    const std::size_t i = idx[slot + 1];
    Poly acc(n);
    for (std::size_t m = 0; m < n; ++m) {
      const Poly& kmi = k(m, i);
      if (kmi.is_zero()) continue;
      idx[slot + 1] = m;
      const Poly& am = a.at(idx);
      if (!am.is_zero()) acc += am * kmi;
    }
    out.data()[f] = std::move(acc);
  }
  return out;
}

template <std::size_t R>
Tensor<R - 1> insert(const Tensor<R>& a, std::size_t slot, const VecField& x) {
  static_assert(R >= 1, "insert needs an argument slot");
  if (a.dim() != x.dim()) throw DimensionError("insert: dimension mismatch");
  if (slot >= R) throw DimensionError("insert: slot out of range");
  const std::size_t n = a.dim();
  Tensor<R - 1> out(n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto small = out.unflatten(f);
    typename Tensor<R>::Index idx{};
    for (std::size_t s = 0, t = 0; s <= R; ++s) {
      if (s == slot + 1) continue;
      idx[s] = small[t++];
    }
    Poly acc(n);
    for (std::size_t m = 0; m < n; ++m) {
      if (x(m).is_zero()) continue;
      idx[slot + 1] = m;
      const Poly& am = a.at(idx);
      if (!am.is_zero()) acc += am * x(m);
    }
    out.data()[f] = std::move(acc);
  }
  return out;
}

template <std::size_t R>
Tensor<R + 1> substitute(const Tensor<R>& a, std::size_t slot, const Tensor12& b) {
  static_assert(R >= 1, "substitute needs an argument slot");
  if (a.dim() != b.dim()) throw DimensionError("substitute: dimension mismatch");
  if (slot >= R) throw DimensionError("substitute: slot out of range");
  const std::size_t n = a.dim();
  Tensor<R + 1> out(n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto big = out.unflatten(f);
    typename Tensor<R>::Index idx{};
    for (std::size_t s = 0, t = 0; s <= R; ++s, ++t) {
      if (s == slot + 1) ++t;
      idx[s] = big[t];
    }
    const std::size_t u = big[slot + 1];
    const std::size_t v = big[slot + 2];
    Poly acc(n);
    for (std::size_t m = 0; m < n; ++m) {
      const Poly& bm = b(m, u, v);
      if (bm.is_zero()) continue;
      idx[slot + 1] = m;
      const Poly& am = a.at(idx);
      if (!am.is_zero()) acc += am * bm;
    }
    out.data()[f] = std::move(acc);
  }
  return out;
}

template <std::size_t R>
Tensor<R> permute(const Tensor<R>& a, const std::array<std::size_t, R>& perm) {
  Tensor<R> out(a.dim());
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto idx = out.unflatten(f);
    typename Tensor<R>::Index src{};
    src[0] = idx[0];
    for (std::size_t s = 0; s < R; ++s) src[s + 1] = idx[perm[s] + 1];
    out.data()[f] = a.at(src);
  }
  return out;
}

template <std::size_t R>
Tensor<R> lie_derivative(const VecField& z, const Tensor<R>& a) {
  if (a.dim() != z.dim()) throw DimensionError("lie_derivative: dimension mismatch");
  const std::size_t n = a.dim();
  // dz[m * n + k] = d_m Z^k
  std::vector<Poly> dz(n * n, Poly(n));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) dz[m * n + k] = z(k).diff(m);
  }
  Tensor<R> out(n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto idx = out.unflatten(f);
    const Poly& self = a.data()[f];
    Poly acc(n);
    if (!self.is_zero()) {
      for (std::size_t m = 0; m < n; ++m) {
        if (!z(m).is_zero()) acc += z(m) * self.diff(m);
      }
    }
    const std::size_t k = idx[0];
    for (std::size_t m = 0; m < n; ++m) {
      const Poly& d = dz[m * n + k];
      if (d.is_zero()) continue;
      idx[0] = m;
      const Poly& am = a.at(idx);
      if (!am.is_zero()) acc -= am * d;
    }
    idx[0] = k;
    for (std::size_t s = 1; s <= R; ++s) {
      const std::size_t i = idx[s];
      for (std::size_t m = 0; m < n; ++m) {
        const Poly& d = dz[i * n + m];
        if (d.is_zero()) continue;
        idx[s] = m;
        const Poly& am = a.at(idx);
        if (!am.is_zero()) acc += am * d;
      }
      idx[s] = i;
    }
    out.data()[f] = std::move(acc);
  }
  return out;
}

namespace detail {
std::string slot_label(std::size_t dim, std::size_t index);
std::string component_label(std::size_t dim, std::size_t index);
}  // namespace detail

template <std::size_t R>
std::string first_nonzero(const std::string& name, const Tensor<R>& a) {
  for (std::size_t f = 0; f < a.size(); ++f) {
    const Poly& p = a.data()[f];
    if (p.is_zero()) continue;
    const auto idx = a.unflatten(f);
    std::string label = name;
    if (R > 0) {
      label += "(";
      for (std::size_t s = 1; s <= R; ++s) {
        if (s > 1) label += ", ";
        label += detail::slot_label(a.dim(), idx[s]);
      }
      label += ")";
    }
    label += "[" + detail::component_label(a.dim(), idx[0]) + "] = " + p.to_string(variable_names(a.dim()));
    return label;
  }
  return {};
}

}  // namespace fncalc
