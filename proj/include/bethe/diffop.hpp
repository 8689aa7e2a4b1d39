#pragma once

#include <utility>
#include <vector>

#include "bethe/error.hpp"
#include "bethe/matrix.hpp"
#include "bethe/ratfun.hpp"
#include "bethe/tensor_rep.hpp"

namespace bethe {

using MatRatFun = RatFun<OperatorMatrix>;

// Differential operator sum_k C_k(u) d^k in one variable with matrix-valued
// rational coefficients sharing one pole list. The ring product is
// noncommutative: moving d across a coefficient costs derivative terms,
//   d^k f = sum_{r <= k} binom(k, r) f^(r) d^(k-r).
class DiffOp {
  public:
    // Zero operator; the prototype fixes pole list and matrix shape.
    explicit DiffOp(MatRatFun proto) : proto_(zeroed(std::move(proto))) {}

    static DiffOp multiplication(MatRatFun f) {
        DiffOp op(f);
        op.c_.push_back(std::move(f));
        op.normalize();
        return op;
    }

    // The bare derivation d, with identity coefficient.
    static DiffOp derivation(const MatRatFun& proto) {
        DiffOp op(proto);
        OperatorMatrix id = OperatorMatrix::identity(proto.zero_sample().dim());
        op.c_.push_back(op.proto_);
        op.c_.push_back(MatRatFun::constant(proto.poles(), std::move(id), proto.zero_sample()));
        return op;
    }

    // order() == -1 for the zero operator.
    int order() const { return static_cast<int>(c_.size()) - 1; }

    const MatRatFun& coeff(int k) const {
        if (k < 0 || k > order()) return proto_;
        return c_[static_cast<std::size_t>(k)];
    }

    const MatRatFun& zero_coeff() const { return proto_; }

    DiffOp& operator+=(const DiffOp& o) {
        while (c_.size() < o.c_.size()) c_.push_back(proto_);
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        normalize();
        return *this;
    }
    DiffOp& operator-=(const DiffOp& o) {
        while (c_.size() < o.c_.size()) c_.push_back(proto_);
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        normalize();
        return *this;
    }

    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }

    DiffOp operator-() const {
        DiffOp r = *this;
        for (auto& c : r.c_) c = c.scaled(Rational(-1));
        return r;
    }

    friend DiffOp operator*(const DiffOp& a, const DiffOp& b) {
        DiffOp out(a.proto_);
        if (a.order() < 0 || b.order() < 0) return out;
        out.c_.assign(static_cast<std::size_t>(a.order() + b.order()) + 1, a.proto_);
        // Cache derivatives of b's coefficients up to a's order.
        std::vector<std::vector<MatRatFun>> der;
        for (int m = 0; m <= b.order(); ++m) {
            std::vector<MatRatFun> row{b.c_[static_cast<std::size_t>(m)]};
            for (int r = 1; r <= a.order(); ++r) row.push_back(row.back().derivative());
            der.push_back(std::move(row));
        }
        for (int k = 0; k <= a.order(); ++k) {
            const MatRatFun& ak = a.c_[static_cast<std::size_t>(k)];
            if (ak.is_zero()) continue;
            for (int m = 0; m <= b.order(); ++m) {
                for (int r = 0; r <= k; ++r) {
                    const MatRatFun& bm = der[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)];
                    if (bm.is_zero()) continue;
                    MatRatFun term = ak * bm;
                    Rational binom = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(r));
                    out.c_[static_cast<std::size_t>(k - r + m)] += term.scaled(binom);
                }
            }
        }
        out.normalize();
        return out;
    }

    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.c_ == b.c_; }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

  private:
    static MatRatFun zeroed(MatRatFun proto) {
        return MatRatFun(proto.poles(), proto.zero_sample());
    }

    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    MatRatFun proto_;            // zero coefficient of the right shape
    std::vector<MatRatFun> c_;   // c_[k] multiplies d^k
};

}  // namespace bethe
