#include "sdcode/cyclotomic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sdcode {

namespace {

// Dense F2[x] polynomials as bit masks, degree <= 62.
int poly_deg(std::uint64_t a) { return a ? 63 - __builtin_clzll(a) : -1; }

std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        int i = __builtin_ctzll(b);
        b &= b - 1;
        r ^= a << i;
    }
    return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    int dm = poly_deg(m);
    for (int d = poly_deg(a); d >= dm; d = poly_deg(a)) a ^= m << (d - dm);
    return a;
}

std::uint64_t poly_divq(std::uint64_t a, std::uint64_t m) {
    int dm = poly_deg(m);
    std::uint64_t q = 0;
    for (int d = poly_deg(a); d >= dm; d = poly_deg(a)) {
        q |= std::uint64_t(1) << (d - dm);
        a ^= m << (d - dm);
    }
    return q;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// Inverse of a mod m (gcd must be 1).
std::uint64_t poly_inv_mod(std::uint64_t a, std::uint64_t m) {
    std::uint64_t r0 = m, r1 = poly_mod(a, m);
    std::uint64_t t0 = 0, t1 = 1;
    while (r1) {
        std::uint64_t q = poly_divq(r0, r1);
        std::uint64_t r2 = r0 ^ poly_mul(q, r1);
        std::uint64_t t2 = t0 ^ poly_mul(q, t1);
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::invalid_argument("poly_inv_mod: not invertible");
    return poly_mod(t0, m);
}

bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

}  // namespace

RingElement IdealSystem::x_gen(int j) const { return ring_mul(2u, idempotents[j], p); }

IdealSystem factor_cyclotomic(int p) {
    if (!is_odd_prime(p) || p > 31) throw std::invalid_argument("factor_cyclotomic: p must be an odd prime <= 31");
    IdealSystem sys;
    sys.p = p;
    int ord = 1;
    {
        int v = 2 % p;
        while (v != 1) { v = (2 * v) % p; ++ord; }
    }
    sys.ord2 = ord;
    int s = (p - 1) / ord;

    // Berlekamp split of f = 1 + x + ... + x^{p-1} (the cofactor of x+1).
    std::uint64_t f = (std::uint64_t(1) << p) - 1;
    int d = p - 1;
    // Solve (Q - I) v = 0 where column i of Q is x^{2i} mod f; kernel vectors
    // are polynomials with v^2 = v (mod f).
    std::vector<std::uint64_t> a(d, 0);  // a[r] = row r over columns 0..d-1
    for (int i = 0; i < d; ++i) {
        std::uint64_t coli = poly_mod(std::uint64_t(1) << (2 * i), f) ^ (std::uint64_t(1) << i);
        for (int r = 0; r < d; ++r) {
            if ((coli >> r) & 1) a[r] |= std::uint64_t(1) << i;
        }
    }
    std::vector<int> pivot_col;
    int rr = 0;
    for (int cc = 0; cc < d && rr < d; ++cc) {
        int pv = -1;
        for (int r = rr; r < d; ++r) {
            if ((a[r] >> cc) & 1) { pv = r; break; }
        }
        if (pv < 0) continue;
        std::swap(a[rr], a[pv]);
        for (int r = 0; r < d; ++r) {
            if (r != rr && ((a[r] >> cc) & 1)) a[r] ^= a[rr];
        }
        pivot_col.push_back(cc);
        ++rr;
    }
    std::vector<std::uint64_t> kernel;
    std::vector<bool> is_piv(d, false);
    for (int cc : pivot_col) is_piv[cc] = true;
    for (int cc = 0; cc < d; ++cc) {
        if (is_piv[cc]) continue;
        std::uint64_t v = std::uint64_t(1) << cc;
        for (int r = 0; r < (int)pivot_col.size(); ++r) {
            if ((a[r] >> cc) & 1) v |= std::uint64_t(1) << pivot_col[r];
        }
        kernel.push_back(v);
    }
    // kernel entries are coefficient masks of polynomials v with v^2 = v mod f.
    std::vector<std::uint64_t> factors{f};
    for (std::uint64_t v : kernel) {
        if ((int)factors.size() >= s) break;
        std::vector<std::uint64_t> next;
        for (std::uint64_t u : factors) {
            if (poly_deg(u) == ord) { next.push_back(u); continue; }
            std::uint64_t g0 = poly_gcd(u, poly_mod(v, u));
            if (g0 == 0) g0 = u;
            std::uint64_t g1 = poly_gcd(u, poly_mod(v ^ 1, u));
            if (g1 == 0) g1 = u;
            if (poly_deg(g0) > 0 && poly_deg(g0) < poly_deg(u)) {
                next.push_back(g0);
                next.push_back(poly_divq(u, g0));
            } else if (poly_deg(g1) > 0 && poly_deg(g1) < poly_deg(u)) {
                next.push_back(g1);
                next.push_back(poly_divq(u, g1));
            } else {
                next.push_back(u);
            }
        }
        factors = std::move(next);
    }
    // Fully split any residual composites by pairwise kernel combinations.
    bool progress = true;
    while ((int)factors.size() < s && progress) {
        progress = false;
        for (std::uint64_t v : kernel) {
            std::vector<std::uint64_t> next;
            for (std::uint64_t u : factors) {
                if (poly_deg(u) == ord) { next.push_back(u); continue; }
                std::uint64_t g0 = poly_gcd(u, poly_mod(v, u));
                if (poly_deg(g0) > 0 && poly_deg(g0) < poly_deg(u)) {
                    next.push_back(g0);
                    next.push_back(poly_divq(u, g0));
                    progress = true;
                } else {
                    next.push_back(u);
                }
            }
            factors = std::move(next);
        }
    }
    if ((int)factors.size() != s) throw std::logic_error("factor_cyclotomic: split failed");
    for (std::uint64_t h : factors) {
        if (poly_deg(h) != ord) throw std::logic_error("factor_cyclotomic: bad factor degree");
    }
    std::sort(factors.begin(), factors.end());
    sys.factors = factors;

    std::uint64_t xp1 = (std::uint64_t(1) << p) ^ 1;  // x^p + 1
    sys.unity_complement = (RingElement)f;
    for (std::uint64_t h : factors) {
        std::uint64_t g = poly_divq(xp1, h);
        sys.generators.push_back((RingElement)g);
        // e_j = g * (g^{-1} mod h) mod (x^p + 1)
        std::uint64_t ginv = poly_inv_mod(g, h);
        std::uint64_t e = poly_mod(poly_mul(g, ginv), xp1);
        sys.idempotents.push_back((RingElement)e);
    }
    return sys;
}

RingElement ring_add(RingElement a, RingElement b) { return a ^ b; }

RingElement ring_mul(RingElement a, RingElement b, int p) {
    // Schoolbook product; degrees stay below 2p, so one exponent fold suffices.
    std::uint64_t wide = 0;
    std::uint32_t bb = b;
    while (bb) {
        int i = __builtin_ctz(bb);
        bb &= bb - 1;
        wide ^= (std::uint64_t)a << i;
    }
    RingElement r = (RingElement)(wide & ((std::uint64_t(1) << p) - 1));
    r ^= (RingElement)(wide >> p);
    return r;
}

RingElement substitute(RingElement a, int t, int p) {
    t %= p;
    if (t < 0) t += p;
    if (t == 0) throw std::invalid_argument("substitute: t must be nonzero mod p");
    RingElement r = 0;
    while (a) {
        int i = __builtin_ctz(a);
        a &= a - 1;
        r |= RingElement(1) << ((i * t) % p);
    }
    return r;
}

RingElement conjugate(RingElement a, int p) { return substitute(a, p - 1, p); }

int ring_weight(RingElement a) { return __builtin_popcount(a); }

std::string ring_to_string(RingElement a, int p) {
    std::string s(p, '0');
    for (int i = 0; i < p; ++i) {
        if ((a >> i) & 1) s[i] = '1';
    }
    return s;
}

RingElement ring_from_string(const std::string& s) {
    RingElement a = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') a |= RingElement(1) << i;
        else if (s[i] != '0') throw std::invalid_argument("ring_from_string: bad character");
    }
    return a;
}

RingElement field_inverse(RingElement a, int j, const IdealSystem& sys) {
    if (a == 0) throw std::invalid_argument("field_inverse: zero");
    std::uint64_t h = sys.factors[j];
    std::uint64_t r = poly_inv_mod(a, h);
    // lift back into I_j: b = r * e_j mod (x^p + 1)
    return ring_mul((RingElement)r, sys.idempotents[j], sys.p);
}

RingElement field_pow(RingElement a, std::uint64_t e, int j, const IdealSystem& sys) {
    RingElement r = sys.idempotents[j];
    RingElement b = a;
    while (e) {
        if (e & 1) r = ring_mul(r, b, sys.p);
        b = ring_mul(b, b, sys.p);
        e >>= 1;
    }
    return r;
}

int shift_log(RingElement a, int j, const IdealSystem& sys) {
    RingElement cur = sys.idempotents[j];
    RingElement xg = sys.x_gen(j);
    for (int t = 0; t < sys.p; ++t) {
        if (cur == a) return t;
        cur = ring_mul(cur, xg, sys.p);
    }
    return -1;
}

RingElement form_value(const std::vector<RingElement>& u, const std::vector<RingElement>& v, int p) {
    if (u.size() != v.size()) throw std::invalid_argument("form_value: length mismatch");
    RingElement r = 0;
    for (std::size_t i = 0; i < u.size(); ++i) r ^= ring_mul(u[i], conjugate(v[i], p), p);
    return r;
}

BinaryCode ModuleCode::binary_image() const {
    std::vector<BitVector> bs;
    bs.reserve(rows.size());
    for (const auto& row : rows) {
        BitVector v(bits());
        for (int i = 0; i < c; ++i) {
            RingElement a = row[i];
            while (a) {
                int b = __builtin_ctz(a);
                a &= a - 1;
                v.set(p * i + b, true);
            }
        }
        bs.push_back(v);
    }
    return BinaryCode::from_rows(bits(), bs);
}

ModuleCode module_from_binary(const BinaryCode& b, int p) {
    if (b.n() % p != 0) throw std::invalid_argument("module_from_binary: length not divisible by p");
    ModuleCode m;
    m.p = p;
    m.c = b.n() / p;
    for (const auto& r : b.rows()) {
        std::vector<RingElement> row(m.c, 0);
        for (int i = 0; i < b.n(); ++i) {
            if (r.get(i)) row[i / p] |= RingElement(1) << (i % p);
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

bool ModuleCode::is_module_closed() const {
    BinaryCode img = binary_image();
    for (const auto& row : rows) {
        BitVector v(bits());
        for (int i = 0; i < c; ++i) {
            RingElement a = ring_mul(2u, row[i], p);
            while (a) {
                int b = __builtin_ctz(a);
                a &= a - 1;
                v.set(p * i + b, true);
            }
        }
        if (!img.contains(v)) return false;
    }
    return true;
}

ModuleCode ModuleCode::module_closure() const {
    std::vector<std::vector<RingElement>> all;
    for (const auto& row : rows) {
        std::vector<RingElement> cur = row;
        for (int t = 0; t < p; ++t) {
            all.push_back(cur);
            for (int i = 0; i < c; ++i) cur[i] = ring_mul(2u, cur[i], p);
        }
    }
    ModuleCode m{p, c, all};
    return module_from_binary(m.binary_image(), p);
}

ModuleCode ModuleCode::reduced() const { return module_from_binary(binary_image(), p); }

std::string ModuleCode::to_text() const {
    std::ostringstream os;
    os << p << ' ' << c << ' ' << rows.size() << '\n';
    for (const auto& row : rows) {
        for (int i = 0; i < c; ++i) {
            if (i) os << ' ';
            os << ring_to_string(row[i], p);
        }
        os << '\n';
    }
    return os.str();
}

ModuleCode ModuleCode::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    ModuleCode m;
    int nrows = -1;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (nrows < 0) {
            if (ls >> m.p >> m.c >> nrows) continue;
            continue;  // skip blank/comment lines before header
        }
        std::vector<RingElement> row;
        std::string tok;
        while (ls >> tok) {
            if ((int)tok.size() != m.p)
                throw std::invalid_argument("ModuleCode: entry width != p");
            row.push_back(ring_from_string(tok));
        }
        if (row.empty()) continue;
        if ((int)row.size() != m.c) throw std::invalid_argument("ModuleCode: row width != c");
        m.rows.push_back(std::move(row));
    }
    if (nrows < 0 || (int)m.rows.size() != nrows)
        throw std::invalid_argument("ModuleCode: bad header or row count");
    return m;
}

std::vector<ModuleCode> module_decompose(const ModuleCode& m, const IdealSystem& sys) {
    if (m.p != sys.p) throw std::invalid_argument("module_decompose: p mismatch");
    std::vector<ModuleCode> comps;
    for (int j = 0; j < sys.s(); ++j) {
        std::vector<std::vector<RingElement>> rows;
        for (const auto& row : m.rows) {
            std::vector<RingElement> r(m.c);
            for (int i = 0; i < m.c; ++i) r[i] = ring_mul(row[i], sys.idempotents[j], sys.p);
            rows.push_back(std::move(r));
        }
        ModuleCode comp{m.p, m.c, rows};
        comps.push_back(comp.reduced());
    }
    return comps;
}

int module_dim(const ModuleCode& component, const IdealSystem& sys) {
    int r = component.binary_image().k();
    if (r % sys.ord2 != 0) throw std::logic_error("module_dim: rank not divisible by field degree");
    return r / sys.ord2;
}

HermitianCheck hermitian_selfdual_check(const ModuleCode& m, const IdealSystem& sys) {
    HermitianCheck hc;
    hc.pairing_ok = true;
    for (const auto& u : m.rows) {
        for (const auto& v : m.rows) {
            if (form_value(u, v, sys.p) != 0) { hc.pairing_ok = false; break; }
        }
        if (!hc.pairing_ok) break;
    }
    int total = 0;
    for (const auto& comp : module_decompose(m, sys)) total += module_dim(comp, sys);
    hc.dimension_ok = (2 * total == m.c * sys.s());
    return hc;
}

}  // namespace sdcode
