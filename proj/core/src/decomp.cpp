#include "sdcode/decomp.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sdcode {

namespace {

bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

BitVector apply_perm_word(const BitVector& v, const Perm& g) {
    BitVector out(v.n);
    for (int limb = 0; limb < 2; ++limb) {
        std::uint64_t bits = v.w[limb];
        while (bits) {
            int i = limb * 64 + __builtin_ctzll(bits);
            bits &= bits - 1;
            out.set(g[i], true);
        }
    }
    return out;
}

}  // namespace

Perm AutomorphismSpec::to_perm() const {
    std::vector<int> img(n());
    for (int i = 0; i < n(); ++i) img[i] = i;
    for (const auto& cyc : cycles) {
        for (int t = 0; t < p; ++t) img[cyc[t]] = cyc[(t + 1) % p];
    }
    return Perm::from_images(img);
}

bool AutomorphismSpec::fixes(const BinaryCode& code) const {
    return code.n() == n() && code.permuted(to_perm()) == code;
}

AutomorphismSpec AutomorphismSpec::from_perm(const Perm& g, int p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("automorphism order must be an odd prime");
    AutomorphismSpec s;
    s.p = p;
    int deg = g.degree();
    std::vector<bool> seen(deg, false);
    for (int i = 0; i < deg; ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            cyc.push_back(j);
            j = g[j];
        }
        if ((int)cyc.size() == 1) {
            s.fixed.push_back(cyc[0]);
        } else if ((int)cyc.size() == p) {
            s.cycles.push_back(std::move(cyc));
        } else {
            throw std::invalid_argument("permutation has a cycle of length other than 1 or p");
        }
    }
    s.c = (int)s.cycles.size();
    s.f = (int)s.fixed.size();
    return s;
}

AutomorphismSpec AutomorphismSpec::standard(int p, int c, int f) {
    if (!is_odd_prime(p) || c < 0 || f < 0)
        throw std::invalid_argument("bad automorphism shape");
    AutomorphismSpec s;
    s.p = p;
    s.c = c;
    s.f = f;
    for (int i = 0; i < c; ++i) {
        std::vector<int> cyc(p);
        for (int t = 0; t < p; ++t) cyc[t] = p * i + t;
        s.cycles.push_back(std::move(cyc));
    }
    for (int j = 0; j < f; ++j) s.fixed.push_back(p * c + j);
    return s;
}

std::string AutomorphismSpec::describe() const {
    std::ostringstream os;
    os << "p=" << p << " c=" << c << " f=" << f;
    return os.str();
}

std::string AutomorphismSpec::serialize() const {
    std::ostringstream os;
    os << describe() << '\n';
    os << "sigma=" << to_perm().to_cycles() << '\n';
    return os.str();
}

AutomorphismSpec AutomorphismSpec::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int p = 0, c = -1, f = -1;
    std::string sigma;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok.rfind("p=", 0) == 0) p = std::stoi(tok.substr(2));
            else if (tok.rfind("c=", 0) == 0) c = std::stoi(tok.substr(2));
            else if (tok.rfind("f=", 0) == 0) f = std::stoi(tok.substr(2));
            else if (tok.rfind("sigma=", 0) == 0) sigma = tok.substr(6);
            else throw std::invalid_argument("bad automorphism token: " + tok);
        }
    }
    if (p == 0 || c < 0 || f < 0) throw std::invalid_argument("automorphism needs p=, c=, f=");
    if (sigma.empty()) return standard(p, c, f);
    AutomorphismSpec s = from_perm(Perm::from_cycles(sigma, p * c + f), p);
    if (s.c != c || s.f != f) throw std::invalid_argument("cycle layout disagrees with c/f");
    return s;
}

AutomorphismSpec AutomorphismSpec::parse_compact(const std::string& text) {
    std::string spaced = text;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    return parse(spaced);
}

SplitResult split(const BinaryCode& code, const AutomorphismSpec& sigma) {
    if (code.n() != sigma.n()) throw std::invalid_argument("split: length mismatch");
    if (!sigma.fixes(code)) throw std::invalid_argument("split: permutation does not fix the code");
    Perm g = sigma.to_perm();
    int k = code.k();

    // Fixed subcode: kernel of v -> v + v.g over the basis.
    std::vector<BitVector> diff;
    diff.reserve(k);
    for (const auto& row : code.rows()) diff.push_back(row ^ apply_perm_word(row, g));
    std::vector<BitVector> fixed_rows;
    for (const auto& tag : combination_kernel(diff, code.n())) {
        BitVector v(code.n());
        for (int i = 0; i < k; ++i) {
            if (tag.get(i)) v ^= code.rows()[i];
        }
        fixed_rows.push_back(v);
    }

    // Cycle subcode: even weight on every cycle, zero on every fixed point.
    int nc = sigma.c + sigma.f;
    std::vector<BitVector> constraint(k, BitVector(nc));
    for (int i = 0; i < k; ++i) {
        const BitVector& row = code.rows()[i];
        for (int ci = 0; ci < sigma.c; ++ci) {
            int par = 0;
            for (int t = 0; t < sigma.p; ++t) par ^= row.get(sigma.cycles[ci][t]);
            if (par) constraint[i].set(ci, true);
        }
        for (int j = 0; j < sigma.f; ++j) {
            if (row.get(sigma.fixed[j])) constraint[i].set(sigma.c + j, true);
        }
    }
    std::vector<BitVector> cycle_rows;
    for (const auto& tag : combination_kernel(constraint, nc)) {
        BitVector v(code.n());
        for (int i = 0; i < k; ++i) {
            if (tag.get(i)) v ^= code.rows()[i];
        }
        cycle_rows.push_back(v);
    }

    SplitResult r;
    r.fixed_subcode = BinaryCode::from_rows(code.n(), fixed_rows);
    r.cycle_subcode = BinaryCode::from_rows(code.n(), cycle_rows);
    if (r.fixed_subcode.k() + r.cycle_subcode.k() != k)
        throw std::logic_error("split: subcodes do not sum to the code dimension");
    std::vector<BitVector> both;
    for (const auto& v : r.fixed_subcode.rows()) both.push_back(v);
    for (const auto& v : r.cycle_subcode.rows()) both.push_back(v);
    if (rref(both, code.n()).rank != k)
        throw std::logic_error("split: subcode sum is not direct");
    return r;
}

BinaryCode project_pi(const BinaryCode& fixed_subcode, const AutomorphismSpec& sigma) {
    if (fixed_subcode.n() != sigma.n()) throw std::invalid_argument("project_pi: length mismatch");
    std::vector<BitVector> rows;
    for (const auto& row : fixed_subcode.rows()) {
        BitVector out(sigma.c + sigma.f);
        for (int ci = 0; ci < sigma.c; ++ci) {
            bool b0 = row.get(sigma.cycles[ci][0]);
            for (int t = 1; t < sigma.p; ++t) {
                if (row.get(sigma.cycles[ci][t]) != b0)
                    throw std::invalid_argument("project_pi: word not constant on a cycle");
            }
            if (b0) out.set(ci, true);
        }
        for (int j = 0; j < sigma.f; ++j) {
            if (row.get(sigma.fixed[j])) out.set(sigma.c + j, true);
        }
        rows.push_back(out);
    }
    return BinaryCode::from_rows(sigma.c + sigma.f, rows);
}

BinaryCode lift_pi(const BinaryCode& c_pi, const AutomorphismSpec& sigma) {
    if (c_pi.n() != sigma.c + sigma.f) throw std::invalid_argument("lift_pi: length mismatch");
    std::vector<BitVector> rows;
    for (const auto& row : c_pi.rows()) {
        BitVector out(sigma.n());
        for (int ci = 0; ci < sigma.c; ++ci) {
            if (row.get(ci)) {
                for (int t = 0; t < sigma.p; ++t) out.set(sigma.cycles[ci][t], true);
            }
        }
        for (int j = 0; j < sigma.f; ++j) {
            if (row.get(sigma.c + j)) out.set(sigma.fixed[j], true);
        }
        rows.push_back(out);
    }
    return BinaryCode::from_rows(sigma.n(), rows);
}

ModuleCode map_phi(const BinaryCode& cycle_subcode, const AutomorphismSpec& sigma) {
    if (cycle_subcode.n() != sigma.n()) throw std::invalid_argument("map_phi: length mismatch");
    ModuleCode m;
    m.p = sigma.p;
    m.c = sigma.c;
    for (const auto& row : cycle_subcode.rows()) {
        for (int j = 0; j < sigma.f; ++j) {
            if (row.get(sigma.fixed[j]))
                throw std::invalid_argument("map_phi: word not zero on a fixed point");
        }
        std::vector<RingElement> mr(sigma.c, 0);
        for (int ci = 0; ci < sigma.c; ++ci) {
            for (int t = 0; t < sigma.p; ++t) {
                if (row.get(sigma.cycles[ci][t])) mr[ci] |= RingElement(1) << t;
            }
        }
        m.rows.push_back(std::move(mr));
    }
    return m;
}

BinaryCode lift_phi(const ModuleCode& c_phi, const AutomorphismSpec& sigma) {
    if (c_phi.p != sigma.p || c_phi.c != sigma.c)
        throw std::invalid_argument("lift_phi: shape mismatch");
    std::vector<BitVector> rows;
    for (const auto& mr : c_phi.rows) {
        BitVector out(sigma.n());
        for (int ci = 0; ci < sigma.c; ++ci) {
            RingElement a = mr[ci];
            while (a) {
                int t = __builtin_ctz(a);
                a &= a - 1;
                out.set(sigma.cycles[ci][t], true);
            }
        }
        rows.push_back(out);
    }
    return BinaryCode::from_rows(sigma.n(), rows);
}

CompatibilityCheck check_compatibility(const BinaryCode& c_pi, const ModuleCode& c_phi) {
    CompatibilityCheck r;
    int p = c_phi.p, c = c_phi.c;
    if (c_pi.n() < c) throw std::invalid_argument("check_compatibility: shape mismatch");
    r.pi_self_dual = c_pi.is_self_dual();
    r.phi_module_closed = c_phi.is_module_closed();
    r.phi_components_even = true;
    for (const auto& row : c_phi.rows) {
        for (RingElement a : row) {
            if (ring_weight(a) % 2) r.phi_components_even = false;
        }
    }
    r.phi_dimension = (2 * c_phi.binary_image().k() == c * (p - 1));
    r.phi_pairing = true;
    for (const auto& u : c_phi.rows) {
        for (const auto& v : c_phi.rows) {
            if (form_value(u, v, p) != 0) r.phi_pairing = false;
        }
    }
    return r;
}

BinaryCode assemble(const BinaryCode& c_pi, const ModuleCode& c_phi,
                    const AutomorphismSpec& sigma) {
    BinaryCode top = lift_pi(c_pi, sigma);
    BinaryCode bottom = lift_phi(c_phi, sigma);
    std::vector<BitVector> rows = top.rows();
    rows.insert(rows.end(), bottom.rows().begin(), bottom.rows().end());
    return BinaryCode::from_rows(sigma.n(), rows);
}

BinaryCode fixed_block_kernel(const BinaryCode& c_pi, int c) {
    if (c < 0 || c > c_pi.n()) throw std::invalid_argument("fixed_block_kernel: bad block size");
    int f = c_pi.n() - c;
    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < c_pi.rows().size(); ++i) {
        if (c_pi.pivots()[i] < c) continue;
        const BitVector& r = c_pi.rows()[i];
        BitVector out(f);
        for (int j = 0; j < f; ++j) {
            if (r.get(c + j)) out.set(j, true);
        }
        rows.push_back(out);
    }
    return BinaryCode::from_rows(f, rows);
}

PiStructure pi_structure(const BinaryCode& c_pi, int c) {
    if (c < 0 || c > c_pi.n()) throw std::invalid_argument("pi_structure: bad block size");
    int f = c_pi.n() - c;
    auto restrict_block = [](const std::vector<BitVector>& rows, int lo, int hi) {
        std::vector<BitVector> out;
        for (const auto& r : rows) {
            BitVector v(hi - lo);
            for (int j = lo; j < hi; ++j) {
                if (r.get(j)) v.set(j - lo, true);
            }
            out.push_back(v);
        }
        return BinaryCode::from_rows(hi - lo, out);
    };

    PiStructure st;
    st.right_core = fixed_block_kernel(c_pi, c);

    // Left-supported subcode: row combinations vanishing on the right block.
    std::vector<BitVector> right_parts;
    for (const auto& r : c_pi.rows()) {
        BitVector v(f);
        for (int j = 0; j < f; ++j) {
            if (r.get(c + j)) v.set(j, true);
        }
        right_parts.push_back(v);
    }
    std::vector<BitVector> left_rows;
    for (const auto& tag : combination_kernel(right_parts, f)) {
        BitVector w(c_pi.n());
        for (std::size_t i = 0; i < c_pi.rows().size(); ++i) {
            if (tag.get((int)i)) w ^= c_pi.rows()[i];
        }
        BitVector v(c);
        for (int j = 0; j < c; ++j) {
            if (w.get(j)) v.set(j, true);
        }
        left_rows.push_back(v);
    }
    st.left_core = BinaryCode::from_rows(c, left_rows);
    st.left_span = restrict_block(c_pi.rows(), 0, c);
    st.right_span = restrict_block(c_pi.rows(), c, c + f);
    st.left_dim = st.left_core.k();
    st.right_dim = st.right_core.k();
    st.mixed_rank = c_pi.k() - st.left_dim - st.right_dim;
    return st;
}

std::vector<BinaryCode> selfdual_lifts(const BinaryCode& d, int c) {
    int f = d.n();
    if (c < 1) throw std::invalid_argument("selfdual_lifts: need c >= 1");
    if ((f - c) % 2 || d.k() * 2 != f - c)
        throw std::invalid_argument("selfdual_lifts: dimension of d must be (f-c)/2");
    if (!d.is_self_orthogonal()) throw std::invalid_argument("selfdual_lifts: d not self-orthogonal");
    BinaryCode dp = d.dual();

    // Coset representatives spanning dual(d)/d.
    std::vector<BitVector> basis = d.rows();
    std::vector<BitVector> q;
    for (const auto& row : dp.rows()) {
        BitVector v = row;
        for (;;) {
            RrefResult rr = rref(basis, f);
            bool reduced = false;
            for (std::size_t i = 0; i < rr.rows.size(); ++i) {
                if (v.get(rr.pivots[i])) {
                    v ^= rr.rows[i];
                    reduced = true;
                }
            }
            if (!reduced) break;
        }
        if (v.weight()) {
            q.push_back(v);
            basis.push_back(v);
        }
    }
    if ((int)q.size() != c) throw std::logic_error("selfdual_lifts: quotient dimension mismatch");

    // Gram matrix of the induced bilinear form on the quotient.
    std::vector<std::vector<int>> gram(c, std::vector<int>(c));
    for (int i = 0; i < c; ++i) {
        for (int j = 0; j < c; ++j) gram[i][j] = q[i].dot(q[j]);
    }
    auto pair_masks = [&](unsigned a, unsigned b) {
        int s = 0;
        for (int i = 0; i < c; ++i) {
            if (!((a >> i) & 1)) continue;
            for (int j = 0; j < c; ++j) {
                if ((b >> j) & 1) s ^= gram[i][j];
            }
        }
        return s;
    };

    // All ordered orthonormal bases; orthonormality forces independence.
    std::vector<unsigned> chosen;
    std::set<std::string> seen;
    std::vector<BinaryCode> out;
    auto emit = [&]() {
        std::vector<BitVector> rows;
        for (int t = 0; t < c; ++t) {
            BitVector row(c + f);
            row.set(t, true);
            for (int i = 0; i < c; ++i) {
                if ((chosen[t] >> i) & 1) {
                    for (int x = 0; x < f; ++x) {
                        if (q[i].get(x)) row.flip(c + x);
                    }
                }
            }
            rows.push_back(row);
        }
        for (const auto& dr : d.rows()) {
            BitVector row(c + f);
            for (int x = 0; x < f; ++x) {
                if (dr.get(x)) row.set(c + x, true);
            }
            rows.push_back(row);
        }
        BinaryCode cand = BinaryCode::from_rows(c + f, rows);
        if (!cand.is_self_dual()) throw std::logic_error("selfdual_lifts: lift not self-dual");
        std::string ser;
        for (const auto& r : cand.rows()) ser += r.to_string();
        if (seen.insert(ser).second) out.push_back(cand);
    };
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == c) {
            emit();
            return;
        }
        for (unsigned m = 1; m < (1u << c); ++m) {
            if (pair_masks(m, m) != 1) continue;
            bool ok = true;
            for (unsigned prev : chosen) {
                if (pair_masks(prev, m)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen.push_back(m);
            self(self, depth + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace sdcode
