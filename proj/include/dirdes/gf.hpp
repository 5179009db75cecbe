#pragma once

#include <vector>

namespace dirdes::gf {

// Arithmetic for GF(p^m) with q = p^m <= 64.  Elements are coded 0..q-1 as
// base-p digit vectors, least significant digit first; code 1 is the field's
// one.  Multiplication uses log tables over a fixed generator, built from the
// numerically smallest primitive monic polynomial.
class Field {
public:
    static const Field& get(int q);

    int q() const { return q_; }
    int p() const { return p_; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const { return sub(0, a); }
    int mul(int a, int b) const;
    int inv(int a) const;
    int generator() const { return antilog_[1]; }

private:
    explicit Field(int q);
    int q_ = 0, p_ = 0, m_ = 0;
    std::vector<int> logx_, antilog_;
};

bool is_prime_power(int q);

}  // namespace dirdes::gf
