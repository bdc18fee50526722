#pragma once

#include <functional>
#include <vector>

#include "graded.hpp"
#include "simplify.hpp"

namespace biforest {

namespace detail {

// Input or output cells of a tensor node, listed in block order.
inline std::vector<int> block_cells(const Expr& e, bool input) {
  GridShape g = input ? e.in : e.out;
  bool rows = e.kind == Expr::Kind::RowTensor;
  std::vector<int> order;
  for (const auto& b : e.blocks) {
    const auto& pos = input ? b.in_pos : b.out_pos;
    if (rows) {
      for (int r : pos)
        for (int c = 0; c < g.cols; ++c) order.push_back(r * g.cols + c);
    } else {
      for (int r = 0; r < g.rows; ++r)
        for (int c : pos) order.push_back(r * g.cols + c);
    }
  }
  return order;
}

}  // namespace detail

// Turns expressions into matrices. Identities and differentials act on the
// source space, which must then equal the target space.
template <class F>
struct Evaluator {
  SpacePtr src, dst;
  const GradedMap<F>* d = nullptr;
  std::function<GradedMap<F>(const OpLabel&)> atom;

  GradedMap<F> zero(const Expr& e) const {
    return GradedMap<F>(TensorSpace(src, e.in.factors()), TensorSpace(dst, e.out.factors()), e.degree);
  }

  GradedMap<F> operator()(const Expr& e) const {
    GradedMap<F> out = eval(e);
    return out.signed_by(e.sign);
  }

 private:
  GradedMap<F> eval(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Zero: return zero(e);
      case Expr::Kind::Identity: return GradedMap<F>::identity(TensorSpace(src, e.in.factors()));
      case Expr::Kind::Differential:
        if (!d) throw MissingOperation("no differential available");
        return tensor_differential(*d, e.in.factors());
      case Expr::Kind::Atom: {
        GradedMap<F> g = atom(*e.atom);
        if (g.src().factors() != e.in.factors() || g.dst().factors() != e.out.factors())
          throw ShapeMismatch("operation " + render(*e.atom) + " has the wrong shape");
        return g;
      }
      case Expr::Kind::Compose: return compose((*this)(*e.outer), (*this)(*e.inner));
      case Expr::Kind::RowTensor:
      case Expr::Kind::ColTensor: {
        GradedMap<F> t = (*this)(*e.blocks.front().expr);
        for (std::size_t i = 1; i < e.blocks.size(); ++i) t = tensor(t, (*this)(*e.blocks[i].expr));
        auto in = permutation_map<F>(TensorSpace(src, e.in.factors()), detail::block_cells(e, true));
        auto out = permutation_map<F>(TensorSpace(dst, e.out.factors()),
                                      inverse_order(detail::block_cells(e, false)));
        return compose(out, compose(t, in));
      }
    }
    throw Error("unknown expression");
  }
};

}  // namespace biforest
