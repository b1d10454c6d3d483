#include "crnbif/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace crn {

MPoly::MPoly(std::vector<std::string> vars, const Q& c) : vars_(std::move(vars)) {
    if (c != 0) terms_[Exp(vars_.size(), 0)] = c;
}

MPoly MPoly::var(const std::vector<std::string>& vars, size_t i) {
    MPoly p(vars);
    Exp e(vars.size(), 0);
    e.at(i) = 1;
    p.terms_[e] = 1;
    return p;
}

MPoly MPoly::var(const std::vector<std::string>& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw std::invalid_argument("unknown indeterminate " + name);
    return var(vars, static_cast<size_t>(it - vars.begin()));
}

MPoly MPoly::from_upoly(const UPoly& p, const std::vector<std::string>& vars, size_t i) {
    MPoly r(vars);
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k) == 0) continue;
        Exp e(vars.size(), 0);
        e[i] = k;
        r.terms_[e] = p.coeff(k);
    }
    return r;
}

int MPoly::index_of(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool MPoly::is_constant() const {
    for (const auto& [e, c] : terms_)
        for (int k : e)
            if (k) return false;
    return true;
}

Q MPoly::constant_term() const {
    auto it = terms_.find(Exp(vars_.size(), 0));
    return it == terms_.end() ? Q(0) : it->second;
}

int MPoly::degree(size_t i) const {
    int d = is_zero() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
}

int MPoly::total_degree() const {
    int d = is_zero() ? -1 : 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

std::vector<size_t> MPoly::support() const {
    std::vector<size_t> s;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (degree(i) > 0) s.push_back(i);
    return s;
}

MPoly MPoly::with_vars(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    std::vector<int> map(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it == vars.end()) {
            if (degree(i) > 0) throw std::invalid_argument("with_vars: dropping used variable " + vars_[i]);
            map[i] = -1;
        } else {
            map[i] = static_cast<int>(it - vars.begin());
        }
    }
    MPoly r(vars);
    for (const auto& [e, c] : terms_) {
        Exp f(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i)
            if (map[i] >= 0) f[map[i]] = e[i];
        r.terms_[f] = c;
    }
    return r;
}

static std::vector<std::string> merged(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> m = a;
    for (const auto& v : b)
        if (std::find(m.begin(), m.end(), v) == m.end()) m.push_back(v);
    return m;
}

void MPoly::add_term(const Exp& e, const Q& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (vars_ != o.vars_) {
        auto m = merged(vars_, o.vars_);
        return with_vars(m) + o.with_vars(m);
    }
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (vars_ != o.vars_) {
        auto m = merged(vars_, o.vars_);
        return with_vars(m) * o.with_vars(m);
    }
    MPoly r(vars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exp e(e1.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

MPoly MPoly::operator*(const Q& c) const {
    if (c == 0) return MPoly(vars_);
    MPoly r = *this;
    for (auto& [e, v] : r.terms_) v *= c;
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    if (vars_ == o.vars_) return terms_ == o.terms_;
    return (*this - o).is_zero();
}

MPoly MPoly::derivative(size_t i) const {
    MPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exp f = e;
        f[i] -= 1;
        r.add_term(f, c * e[i]);
    }
    return r;
}

std::vector<MPoly> MPoly::coeffs_in(size_t i) const {
    int d = degree(i);
    std::vector<MPoly> out(std::max(d + 1, 0), MPoly(vars_));
    for (const auto& [e, c] : terms_) {
        Exp f = e;
        f[i] = 0;
        out[e[i]].add_term(f, c);
    }
    return out;
}

MPoly MPoly::substitute(size_t i, const MPoly& value) const {
    auto cs = coeffs_in(i);
    MPoly r(vars_);
    MPoly v = value.with_vars(merged(vars_, value.vars()));
    r = r.with_vars(v.vars());
    for (size_t k = cs.size(); k-- > 0;) r = r * v + cs[k];
    return r;
}

MPoly MPoly::substitute(size_t i, const Q& value) const { return substitute(i, MPoly(vars_, value)); }

MPoly::Exp MPoly::remove_monomial_content() {
    Exp g(vars_.size(), 0);
    if (terms_.empty()) return g;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) g = e;
        else
            for (size_t i = 0; i < e.size(); ++i) g[i] = std::min(g[i], e[i]);
        first = false;
    }
    std::map<Exp, Q> t;
    for (const auto& [e, c] : terms_) {
        Exp f = e;
        for (size_t i = 0; i < f.size(); ++i) f[i] -= g[i];
        t[f] = c;
    }
    terms_ = std::move(t);
    return g;
}

UPoly MPoly::to_upoly(size_t i) const {
    std::vector<Q> c(std::max(degree(i) + 1, 0), Q(0));
    for (const auto& [e, v] : terms_) {
        for (size_t j = 0; j < e.size(); ++j)
            if (j != i && e[j] != 0) throw std::invalid_argument("to_upoly: polynomial is not univariate");
        c[e[i]] += v;
    }
    return UPoly(std::move(c));
}

double MPoly::eval_double(const std::vector<double>& pt) const {
    double r = 0;
    for (const auto& [e, c] : terms_) {
        double m = c.get_d();
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) m *= pt[i];
        r += m;
    }
    return r;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Q a = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        bool mono = false;
        for (int k : e)
            if (k) mono = true;
        if (!(a == 1 && mono)) os << a.get_str();
        bool need_star = !(a == 1 && mono);
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (need_star) os << "*";
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

MPoly pow(const MPoly& p, unsigned e) {
    MPoly r(p.vars(), Q(1)), b = p;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

MPoly det_berkowitz(const std::vector<std::vector<MPoly>>& a) {
    size_t n = a.size();
    if (n == 0) return MPoly({}, Q(1));
    const auto& vars = a[0][0].vars();
    MPoly one(vars, Q(1));
    // p holds the characteristic polynomial of the leading k x k block,
    // highest power first.
    std::vector<MPoly> p{one};
    for (size_t k = 1; k <= n; ++k) {
        size_t km = k - 1;  // index of the new row/column
        std::vector<MPoly> t(k + 1, MPoly(vars));
        t[0] = one;
        t[1] = -a[km][km];
        // v = C (column above the diagonal), then repeatedly A_{k-1} v
        std::vector<MPoly> v(km, MPoly(vars));
        for (size_t i = 0; i < km; ++i) v[i] = a[i][km];
        for (size_t m = 2; m <= k; ++m) {
            MPoly s(vars);
            for (size_t j = 0; j < km; ++j) s += a[km][j] * v[j];
            t[m] = -s;
            if (m < k) {
                std::vector<MPoly> w(km, MPoly(vars));
                for (size_t i = 0; i < km; ++i)
                    for (size_t j = 0; j < km; ++j) w[i] += a[i][j] * v[j];
                v = std::move(w);
            }
        }
        std::vector<MPoly> q(k + 1, MPoly(vars));
        for (size_t i = 0; i <= k; ++i)
            for (size_t j = 0; j <= std::min(i, k - 1); ++j) q[i] += t[i - j] * p[j];
        p = std::move(q);
    }
    return n % 2 ? -p[n] : p[n];
}

MPoly resultant(const MPoly& p0, const MPoly& q0, const std::string& name) {
    auto vars = merged(p0.vars(), q0.vars());
    MPoly p = p0.with_vars(vars), q = q0.with_vars(vars);
    int iv = p.index_of(name);
    if (iv < 0) throw std::invalid_argument("resultant: unknown variable " + name);
    size_t i = static_cast<size_t>(iv);
    if (p.is_zero() || q.is_zero()) return MPoly(vars);
    int m = p.degree(i), n = q.degree(i);
    if (m == 0) return pow(p, static_cast<unsigned>(n));
    if (n == 0) return pow(q, static_cast<unsigned>(m));
    auto a = p.coeffs_in(i), b = q.coeffs_in(i);
    size_t N = static_cast<size_t>(m + n);
    std::vector<std::vector<MPoly>> s(N, std::vector<MPoly>(N, MPoly(vars)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s[r][r + k] = a[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s[n + r][r + k] = b[n - k];
    return det_berkowitz(s);
}

MPoly eliminate(const std::vector<MPoly>& system, const std::string& drop) {
    std::vector<const MPoly*> with, without;
    for (const auto& p : system) {
        int i = p.index_of(drop);
        (i >= 0 && p.degree(static_cast<size_t>(i)) > 0 ? with : without).push_back(&p);
    }
    if (with.empty()) throw std::invalid_argument("eliminate: " + drop + " absent from all inputs");
    if (with.size() == 1) {
        if (without.empty()) throw std::invalid_argument("eliminate: single equation in " + drop);
        return *without.front();
    }
    MPoly r = resultant(*with[0], *with[1], drop);
    for (size_t k = 2; k < with.size() && r.is_zero(); ++k) r = resultant(*with[0], *with[k], drop);
    return r;
}

}  // namespace crn
