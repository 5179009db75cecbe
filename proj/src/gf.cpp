#include "dirdes/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace dirdes::gf {

namespace {

int smallest_prime_factor(int n) {
    for (int d = 2; d * d <= n; d++)
        if (n % d == 0) return d;
    return n;
}

std::vector<int> digits(int code, int p, int m) {
    std::vector<int> d(m);
    for (int i = 0; i < m; i++) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

int code_of(const std::vector<int>& d, int p) {
    int c = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; i--) c = c * p + d[i];
    return c;
}

// Multiply a residue polynomial by x, reducing by the monic modulus whose
// low coefficients are given.
std::vector<int> times_x(const std::vector<int>& a, const std::vector<int>& modLow, int p) {
    int m = static_cast<int>(a.size());
    std::vector<int> out(m, 0);
    int carry = a[m - 1];
    for (int i = m - 1; i > 0; i--) out[i] = a[i - 1];
    out[0] = 0;
    if (carry)
        for (int i = 0; i < m; i++) out[i] = ((out[i] - carry * modLow[i]) % p + p) % p;
    return out;
}

}  // namespace

bool is_prime_power(int q) {
    if (q < 2) return false;
    int p = smallest_prime_factor(q);
    while (q % p == 0) q /= p;
    return q == 1;
}

Field::Field(int q) : q_(q) {
    if (q < 2 || q > 64 || !is_prime_power(q)) throw std::invalid_argument("field order must be a prime power in [2, 64]");
    p_ = smallest_prime_factor(q);
    m_ = 0;
    for (int t = q; t > 1; t /= p_) m_++;

    logx_.assign(q_, -1);
    antilog_.assign(q_ - 1, 0);
    if (m_ == 1) {
        for (int g = 2;; g++) {
            int x = 1, steps = 0;
            do {
                x = x * g % p_;
                steps++;
            } while (x != 1);
            if (steps == p_ - 1) {
                int v = 1;
                for (int e = 0; e < q_ - 1; e++) {
                    antilog_[e] = v;
                    logx_[v] = e;
                    v = v * g % p_;
                }
                return;
            }
        }
    }
    // Degree-m monic modulus with low coefficients enumerated in numeric
    // order; keep the first whose residue x generates the whole group.
    for (int low = 0; low < q_; low++) {
        auto modLow = digits(low, p_, m_);
        std::vector<int> x(m_, 0);
        x[0] = 1;  // one
        bool ok = true;
        std::vector<int> seenAt(q_, -1);
        for (int e = 0; e < q_ - 1; e++) {
            int c = code_of(x, p_);
            if (c == 0 || seenAt[c] != -1) {
                ok = false;
                break;
            }
            seenAt[c] = e;
            antilog_[e] = c;
            x = times_x(x, modLow, p_);
        }
        if (ok && code_of(x, p_) == 1) {
            for (int e = 0; e < q_ - 1; e++) logx_[antilog_[e]] = e;
            return;
        }
    }
    throw std::logic_error("no primitive modulus found");
}

const Field& Field::get(int q) {
    static std::mutex mu;
    static std::map<int, Field> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, Field(q)).first;
    return it->second;
}

int Field::add(int a, int b) const {
    if (m_ == 1) return (a + b) % p_;
    auto da = digits(a, p_, m_), db = digits(b, p_, m_);
    for (int i = 0; i < m_; i++) da[i] = (da[i] + db[i]) % p_;
    return code_of(da, p_);
}

int Field::sub(int a, int b) const {
    if (m_ == 1) return ((a - b) % p_ + p_) % p_;
    auto da = digits(a, p_, m_), db = digits(b, p_, m_);
    for (int i = 0; i < m_; i++) da[i] = ((da[i] - db[i]) % p_ + p_) % p_;
    return code_of(da, p_);
}

int Field::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return antilog_[(logx_[a] + logx_[b]) % (q_ - 1)];
}

int Field::inv(int a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return antilog_[(q_ - 1 - logx_[a]) % (q_ - 1)];
}

}  // namespace dirdes::gf
