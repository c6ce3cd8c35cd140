#include "fncalc/tensor.hpp"

namespace fncalc {

namespace detail {

std::string slot_label(std::size_t dim, std::size_t index) { return "e_" + variable_names(dim).at(index); }

std::string component_label(std::size_t dim, std::size_t index) { return variable_names(dim).at(index); }

}  // namespace detail

namespace {

void require_dims(std::size_t a, std::size_t b, const char* op) {
  if (a != b) throw DimensionError(std::string(op) + ": dimension mismatch");
}

}  // namespace

VecForm2 VecForm2::from_tensor(Tensor12 t) {
  const std::size_t n = t.dim();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        if (t(k, i, j) + t(k, j, i) != Poly(n)) {
          throw ValidationError("vector 2-form must be antisymmetric",
                                first_nonzero("K + K^T", Tensor12(t + permute<2>(t, {1, 0}))));
        }
      }
    }
  }
  VecForm2 f;
  f.t_ = std::move(t);
  return f;
}

void VecForm2::set(std::size_t k, std::size_t i, std::size_t j, const Poly& value) {
  if (i == j) {
    if (!value.is_zero()) throw ValidationError("vector 2-form must be antisymmetric", "nonzero diagonal entry");
    return;
  }
  t_(k, i, j) = value;
  t_(k, j, i) = -value;
}

VecField coordinate_field(std::size_t dim, std::size_t i) {
  if (i >= dim) throw DimensionError("coordinate field index out of range");
  VecField e(dim);
  e(i) = Poly(dim, Rational(1));
  return e;
}

VecForm1 identity_form(std::size_t dim) {
  VecForm1 id(dim);
  for (std::size_t i = 0; i < dim; ++i) id(i, i) = Poly(dim, Rational(1));
  return id;
}

VecForm1 from_matrix(const PolyMatrix& m) {
  if (m.rows() != m.cols() || m.nvars() != m.rows()) {
    throw DimensionError("vector 1-form needs a square matrix over dim variables");
  }
  VecForm1 k(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) k(r, c) = m(r, c);
  }
  return k;
}

PolyMatrix to_matrix(const VecForm1& k) {
  PolyMatrix m(k.dim(), k.dim(), k.dim());
  for (std::size_t r = 0; r < k.dim(); ++r) {
    for (std::size_t c = 0; c < k.dim(); ++c) m(r, c) = k(r, c);
  }
  return m;
}

VecField column(const VecForm1& k, std::size_t j) {
  VecField x(k.dim());
  for (std::size_t r = 0; r < k.dim(); ++r) x(r) = k(r, j);
  return x;
}

VecField lie_bracket(const VecField& x, const VecField& y) {
  require_dims(x.dim(), y.dim(), "lie_bracket");
  const std::size_t n = x.dim();
  VecField out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Poly acc(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!x(i).is_zero() && !y(k).is_zero()) acc += x(i) * y(k).diff(i);
      if (!y(i).is_zero() && !x(k).is_zero()) acc -= y(i) * x(k).diff(i);
    }
    out(k) = std::move(acc);
  }
  return out;
}

VecField apply(const VecForm1& k, const VecField& x) {
  require_dims(k.dim(), x.dim(), "apply");
  return insert<1>(k, 0, x);
}

VecField apply(const VecForm2& k, const VecField& x, const VecField& y) {
  require_dims(k.dim(), x.dim(), "apply");
  return insert<1>(insert<2>(k.tensor(), 0, x), 0, y);
}

VecField apply(const Tensor13& a, const VecField& x, const VecField& y, const VecField& z) {
  require_dims(a.dim(), x.dim(), "apply");
  return insert<1>(insert<2>(insert<3>(a, 0, x), 0, y), 0, z);
}

VecForm1 compose(const VecForm1& a, const VecForm1& b) { return compose<1>(a, b); }

VecForm2 compose(const VecForm1& a, const VecForm2& b) {
  return VecForm2::from_tensor(compose<2>(a, b.tensor()));
}

VecForm2 lie_derivative(const VecField& z, const VecForm2& a) {
  return VecForm2::from_tensor(lie_derivative<2>(z, a.tensor()));
}

VecForm2 fn_bracket(const VecForm1& k, const VecForm1& l) {
  require_dims(k.dim(), l.dim(), "fn_bracket");
  const std::size_t n = k.dim();
  std::vector<VecField> e, ke, le;
  for (std::size_t i = 0; i < n; ++i) {
    e.push_back(coordinate_field(n, i));
    ke.push_back(column(k, i));
    le.push_back(column(l, i));
  }
  Tensor12 out(n);
  // Coordinate fields commute, so the KL[X,Y] and LK[X,Y] terms drop out.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      VecField v = lie_bracket(ke[i], le[j]) + lie_bracket(le[i], ke[j]);
      v -= apply(k, lie_bracket(le[i], e[j]) + lie_bracket(e[i], le[j]));
      v -= apply(l, lie_bracket(ke[i], e[j]) + lie_bracket(e[i], ke[j]));
      for (std::size_t c = 0; c < n; ++c) {
        out(c, i, j) = v(c);
        out(c, j, i) = -v(c);
      }
    }
  }
  return VecForm2::from_tensor(std::move(out));
}

VecForm1 fn_bracket(const VecForm1& k, const VecField& s) {
  require_dims(k.dim(), s.dim(), "fn_bracket");
  return -lie_derivative<1>(s, k);
}

VecForm2 interior_product(const VecForm1& k, const VecForm2& b) {
  require_dims(k.dim(), b.dim(), "interior_product");
  return VecForm2::from_tensor(precompose<2>(b.tensor(), 0, k) + precompose<2>(b.tensor(), 1, k));
}

VecForm1 potential(const VecForm2& k, const VecField& s) {
  require_dims(k.dim(), s.dim(), "potential");
  return insert<2>(k.tensor(), 0, s);
}

VecField potential(const VecForm1& k, const VecField& s) { return apply(k, s); }

Tensor13 cyclic_sum(const Tensor13& a) {
  return a + permute<3>(a, {1, 2, 0}) + permute<3>(a, {2, 0, 1});
}

Tensor14 cyclic_sum(const Tensor14& a) {
  return a + permute<4>(a, {1, 2, 0, 3}) + permute<4>(a, {2, 0, 1, 3});
}

}  // namespace fncalc
