#include "sdcode/classify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sdcode {

namespace {

// --- field linear algebra over one ideal component --------------------------

int component_index(const ModuleCode& m, const IdealSystem& sys) {
    for (const auto& row : m.rows) {
        for (RingElement a : row) {
            if (!a) continue;
            for (int j = 0; j < sys.s(); ++j) {
                if (ring_mul(a, sys.idempotents[j], sys.p) == a) return j;
            }
            throw std::invalid_argument("module does not lie in a single field component");
        }
    }
    throw std::invalid_argument("component_index: zero module");
}

void check_pure_component(const ModuleCode& m, int j, const IdealSystem& sys) {
    for (const auto& row : m.rows) {
        for (RingElement a : row) {
            if (a && ring_mul(a, sys.idempotents[j], sys.p) != a)
                throw std::invalid_argument("module does not lie in a single field component");
        }
    }
}

using FieldMatrix = std::vector<std::vector<RingElement>>;

FieldMatrix field_rref(FieldMatrix rows, int c, int j, const IdealSystem& sys) {
    int p = sys.p;
    int r = 0;
    for (int col = 0; col < c && r < (int)rows.size(); ++col) {
        int pr = -1;
        for (int i = r; i < (int)rows.size(); ++i) {
            if (rows[i][col]) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(rows[r], rows[pr]);
        RingElement inv = field_inverse(rows[r][col], j, sys);
        for (int t = 0; t < c; ++t) rows[r][t] = ring_mul(rows[r][t], inv, p);
        for (int i = 0; i < (int)rows.size(); ++i) {
            if (i == r || !rows[i][col]) continue;
            RingElement f = rows[i][col];
            for (int t = 0; t < c; ++t) rows[i][t] = ring_add(rows[i][t], ring_mul(f, rows[r][t], p));
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

std::vector<int> rref_pivots(const FieldMatrix& rr, int c) {
    std::vector<int> piv;
    for (const auto& row : rr) {
        int col = 0;
        while (col < c && !row[col]) ++col;
        piv.push_back(col);
    }
    return piv;
}

// Union-find with additive potentials mod p: solves t_a - t_b = d systems.
struct ShiftSolver {
    int p;
    std::vector<int> parent, off;  // off[i] = t_i - t_parent[i] mod p

    explicit ShiftSolver(int n, int prime) : p(prime), parent(n), off(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    std::pair<int, int> find(int i) {
        if (parent[i] == i) return {i, 0};
        auto [root, o] = find(parent[i]);
        parent[i] = root;
        off[i] = (off[i] + o) % p;
        return {root, off[i]};
    }
    bool unite(int a, int b, int d) {  // t_a - t_b = d
        auto [ra, oa] = find(a);
        auto [rb, ob] = find(b);
        if (ra == rb) return ((oa - ob - d) % p + p) % p == 0;
        parent[ra] = rb;
        off[ra] = ((d + ob - oa) % p + p) % p;
        return true;
    }
    int value(int i) {  // t_i relative to its component root
        return find(i).second;
    }
};

// Does a diagonal shift carry rref `have` onto rref `want`? Both must be
// reduced forms over the same field. Returns the shifts when solvable.
std::optional<std::vector<int>> solve_shifts(const FieldMatrix& want, const FieldMatrix& have,
                                             int c, int j, const IdealSystem& sys) {
    if (want.size() != have.size()) return std::nullopt;
    std::vector<int> pw = rref_pivots(want, c), ph = rref_pivots(have, c);
    if (pw != ph) return std::nullopt;
    int p = sys.p;
    ShiftSolver solver(c, p);
    for (std::size_t r = 0; r < want.size(); ++r) {
        for (int i = 0; i < c; ++i) {
            bool zw = !want[r][i], zh = !have[r][i];
            if (zw != zh) return std::nullopt;
            if (zw) continue;
            int lw = shift_log(want[r][i], j, sys);
            int lh = shift_log(have[r][i], j, sys);
            if (lw < 0 || lh < 0) return std::nullopt;
            // want = x^(t_i - t_pivot) * have.
            int d = ((lw - lh) % p + p) % p;
            if (!solver.unite(i, pw[r], d)) return std::nullopt;
        }
    }
    std::vector<int> shifts(c);
    for (int i = 0; i < c; ++i) shifts[i] = solver.value(i);
    return shifts;
}

FieldMatrix module_field_rows(const ModuleCode& m) {
    FieldMatrix rows;
    for (const auto& row : m.rows) rows.push_back(row);
    return rows;
}

FieldMatrix substituted(const FieldMatrix& rows, int t, int p) {
    FieldMatrix out = rows;
    for (auto& row : out) {
        for (auto& a : row) {
            if (a) a = substitute(a, t, p);
        }
    }
    return out;
}

FieldMatrix column_permuted(const FieldMatrix& rows, const Perm& rho) {
    FieldMatrix out(rows.size());
    int c = rho.degree();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out[r].assign(c, 0);
        for (int i = 0; i < c; ++i) out[r][rho[i]] = rows[r][i];
    }
    return out;
}

struct TransformSearch {
    const IdealSystem& sys;
    int c;
    int j;
    FieldMatrix target;                  // field rref of the reference module
    std::vector<FieldMatrix> sub_forms;  // source rows under each Frobenius power

    TransformSearch(const ModuleCode& target_m, const ModuleCode& source_m, const IdealSystem& s)
        : sys(s), c(target_m.c), j(component_index(target_m, s)) {
        check_pure_component(target_m, j, s);
        check_pure_component(source_m, j, s);
        if (source_m.c != c || source_m.p != target_m.p)
            throw std::invalid_argument("transform search: shape mismatch");
        target = field_rref(module_field_rows(target_m), c, j, sys);
        int t = 1;
        for (int a = 0; a < sys.ord2; ++a) {
            sub_forms.push_back(substituted(module_field_rows(source_m), t, sys.p));
            t = t * 2 % sys.p;
        }
    }

    // Shifts completing (rho, frobenius a) into a map of source onto target.
    std::optional<std::vector<int>> attempt(const Perm& rho, int a) const {
        FieldMatrix moved = field_rref(column_permuted(sub_forms[a], rho), c, j, sys);
        return solve_shifts(target, moved, c, j, sys);
    }
};

Perm extend_identity(const Perm& g, int degree) {
    std::vector<int> img(degree);
    for (int i = 0; i < degree; ++i) img[i] = i < g.degree() ? g[i] : i;
    return Perm::from_images(img);
}

// --- gauge-canonical form for (I|A) component shapes -------------------------

// Matrices in discrete-log space: -1 encodes zero, else the exponent of the
// cycle generator. The canonical string minimizes over Frobenius powers, row
// permutations and row scalings, with columns normalized and sorted (their
// scalings and order are free).
std::string gauge_canonical(const std::vector<signed char>& mat, int dim, int w, int p,
                            int ord2) {
    std::vector<int> rowperm(dim);
    for (int i = 0; i < dim; ++i) rowperm[i] = i;
    std::vector<std::uint64_t> best, cur;
    bool have_best = false;
    std::vector<signed char> frobbed(mat.size());
    std::vector<int> scales(dim, 0);
    for (int a = 0; a < ord2; ++a) {
        int t = 1;
        for (int q = 0; q < a; ++q) t = t * 2 % p;
        for (std::size_t i = 0; i < mat.size(); ++i)
            frobbed[i] = mat[i] < 0 ? -1 : (signed char)((int)mat[i] * t % p);
        std::sort(rowperm.begin(), rowperm.end());
        do {
            // scales[0] fixed: a global shift cancels under column normalization.
            std::fill(scales.begin(), scales.end(), 0);
            for (;;) {
                cur.clear();
                for (int col = 0; col < w; ++col) {
                    int lead = -1;
                    std::uint64_t packed = 0;
                    for (int r = 0; r < dim; ++r) {
                        int v = frobbed[rowperm[r] * w + col];
                        if (v >= 0) {
                            v = (v + scales[r]) % p;
                            if (lead < 0) lead = v;
                            v = (v - lead + p) % p;
                        }
                        packed = packed << 8 | (std::uint64_t)(v + 1);
                    }
                    cur.push_back(packed);
                }
                std::sort(cur.begin(), cur.end());
                if (!have_best || cur < best) {
                    best = cur;
                    have_best = true;
                }
                int r = dim - 1;
                while (r >= 1 && scales[r] == p - 1) scales[r--] = 0;
                if (r < 1) break;
                ++scales[r];
            }
        } while (std::next_permutation(rowperm.begin(), rowperm.end()));
    }
    std::string out;
    for (std::uint64_t v : best) {
        for (int b = 0; b < 8; ++b) out.push_back((char)(v >> (8 * b) & 0xff));
    }
    return out;
}

std::string weight_dist_string(const BinaryCode& code) {
    WeightDistribution wd = weight_distribution(code);
    std::ostringstream os;
    for (std::size_t i = 0; i < wd.counts.size(); ++i) {
        if (wd.counts[i]) os << i << ':' << wd.counts[i] << ' ';
    }
    return os.str();
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    int nt = std::min(threads, count);
    std::vector<std::exception_ptr> errors(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    int i = next.fetch_add(1);
                    if (i >= count) return;
                    fn(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
                next.store(count);
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

// --- shared classification tail ---------------------------------------------

struct Candidate {
    BinaryCode code;
    std::string run;
    std::string provenance;
};

void finish_runs(ClassificationReport& rep, std::vector<Candidate>& cands,
                 const std::vector<std::string>& run_order, const ClassifyOptions& opt) {
    int n = (int)cands.size();
    std::vector<WeightDistribution> wds(n);
    parallel_for(n, opt.threads, [&](int i) { wds[i] = weight_distribution(cands[i].code); });

    std::vector<int> survivors;
    for (int i = 0; i < n; ++i) {
        int d = 0;
        for (int w = 1; w <= wds[i].n; ++w) {
            if (wds[i].at(w)) {
                d = w;
                break;
            }
        }
        if (d == 8) survivors.push_back(i);
    }
    if (opt.progress)
        std::cerr << "# candidates " << n << ", minimum-weight-8 survivors " << survivors.size()
                  << "\n";

    std::map<std::string, ClassifiedCode> by_key;
    std::map<std::string, std::set<std::string>> run_keys;
    int done = 0;
    for (int i : survivors) {
        auto profile = beta_profile(wds[i]);
        if (!profile)
            throw std::logic_error("survivor weight distribution outside both families: " +
                                   cands[i].provenance);
        CanonicalResult canon = canonical_form(cands[i].code);
        run_keys[cands[i].run].insert(canon.key);
        auto it = by_key.find(canon.key);
        if (it == by_key.end()) {
            ClassifiedCode cc;
            cc.code = cands[i].code;
            cc.key = canon.key;
            cc.profile = *profile;
            cc.aut_order = canon.aut.order;
            cc.provenance = cands[i].provenance;
            by_key.emplace(canon.key, std::move(cc));
        }
        if (opt.progress && ++done % 50 == 0)
            std::cerr << "# canonicalized " << done << "/" << survivors.size() << "\n";
    }
    for (auto& [key, cc] : by_key) rep.codes.push_back(cc);
    for (const auto& run : run_order)
        rep.case_counts.emplace_back(run, (int)run_keys[run].size());
    rep.finalize();
}

std::string case_name(int dim) { return dim == 1 ? "I" : dim == 2 ? "II" : "III"; }

}  // namespace

// --- public: profiles --------------------------------------------------------

std::optional<BetaProfile> beta_profile(const WeightDistribution& w) {
    if (w.n != 44 || w.at(0) != 1) return std::nullopt;
    for (int i = 1; i < 8; ++i) {
        if (w.at(i)) return std::nullopt;
    }
    std::int64_t a8 = (std::int64_t)w.at(8), a10 = (std::int64_t)w.at(10);
    if ((a8 - 44) % 4) return std::nullopt;
    std::int64_t beta = (a8 - 44) / 4;
    BetaProfile out;
    out.beta = (int)beta;
    if (a10 == 976 - 8 * beta)
        out.family = 1;
    else if (a10 == 1232 - 8 * beta)
        out.family = 2;
    else
        return std::nullopt;
    return out;
}

// --- public: transformations -------------------------------------------------

ModuleCode apply_transform(const ModuleCode& m, const CycleTransform& t) {
    if (t.rho.degree() != m.c) throw std::invalid_argument("apply_transform: degree mismatch");
    if ((int)t.shifts.size() != m.c) throw std::invalid_argument("apply_transform: shift count");
    int p = m.p;
    int sub = 1;
    for (int a = 0; a < t.frobenius; ++a) sub = sub * 2 % p;
    ModuleCode out;
    out.p = p;
    out.c = m.c;
    for (const auto& row : m.rows) {
        std::vector<RingElement> nr(m.c, 0);
        for (int i = 0; i < m.c; ++i) {
            RingElement a = row[i];
            if (a && sub != 1) a = substitute(a, sub, p);
            nr[t.rho[i]] = a;
        }
        for (int i = 0; i < m.c; ++i) {
            if (nr[i]) nr[i] = ring_mul(nr[i], RingElement(1) << (t.shifts[i] % p), p);
        }
        out.rows.push_back(std::move(nr));
    }
    return out.reduced();
}

std::vector<Perm> transform_stabilizer_gens(const ModuleCode& m) {
    IdealSystem sys = factor_cyclotomic(m.p);
    TransformSearch search(m, m, sys);
    int c = m.c;
    std::vector<Perm> gens;
    PermGroup found = PermGroup::generated_by({}, c);
    std::vector<int> img(c);
    for (int i = 0; i < c; ++i) img[i] = i;
    do {
        Perm rho = Perm::from_images(img);
        if (found.contains(rho)) continue;
        for (int a = 0; a < sys.ord2; ++a) {
            if (search.attempt(rho, a)) {
                gens.push_back(rho);
                found.extend(rho);
                break;
            }
        }
    } while (std::next_permutation(img.begin(), img.end()));
    return gens;
}

std::optional<CycleTransform> transform_between(const ModuleCode& a, const ModuleCode& b) {
    IdealSystem sys = factor_cyclotomic(a.p);
    TransformSearch search(b, a, sys);
    int c = a.c;
    std::vector<int> img(c);
    for (int i = 0; i < c; ++i) img[i] = i;
    do {
        Perm rho = Perm::from_images(img);
        for (int f = 0; f < sys.ord2; ++f) {
            auto shifts = search.attempt(rho, f);
            if (!shifts) continue;
            CycleTransform t{rho, *shifts, f};
            if (apply_transform(a, t).binary_image() != b.reduced().binary_image())
                throw std::logic_error("transform_between: witness verification failed");
            return t;
        }
    } while (std::next_permutation(img.begin(), img.end()));
    return std::nullopt;
}

// --- public: order-7 components ---------------------------------------------

std::vector<ModuleCode> component_reps(int c, int dim) {
    if (dim < 1 || dim > c) throw std::invalid_argument("component_reps: bad dimension");
    IdealSystem sys = factor_cyclotomic(7);
    const int p = 7;
    RingElement e = sys.idempotents[0];
    std::vector<RingElement> pow_table(p);
    for (int l = 0; l < p; ++l) pow_table[l] = ring_mul(RingElement(1) << l, e, p);

    int w = c - dim;
    // Normalized nonzero columns in log space: first nonzero entry has log 0.
    std::vector<std::vector<signed char>> columns;
    std::vector<signed char> col(dim, -1);
    auto rec_cols = [&](auto&& self, int r, bool seen) -> void {
        if (r == dim) {
            if (seen) columns.push_back(col);
            return;
        }
        col[r] = -1;
        self(self, r + 1, seen);
        if (!seen) {
            col[r] = 0;
            self(self, r + 1, true);
        } else {
            for (int l = 0; l < p; ++l) {
                col[r] = (signed char)l;
                self(self, r + 1, true);
            }
        }
        col[r] = -1;
    };
    rec_cols(rec_cols, 0, false);

    // Non-decreasing column index tuples = sorted column multisets.
    std::map<std::string, std::vector<signed char>> classes;  // gauge key -> log matrix
    std::vector<int> pick(w, 0);
    std::vector<signed char> mat(dim * w);
    auto rec_pick = [&](auto&& self, int pos, int lo) -> void {
        if (pos == w) {
            for (int r = 0; r < dim; ++r) {
                bool nz = false;
                for (int j = 0; j < w; ++j) {
                    mat[r * w + j] = columns[pick[j]][r];
                    nz = nz || columns[pick[j]][r] >= 0;
                }
                if (!nz) return;  // weight-1 codeword on pivot r
            }
            std::string key = gauge_canonical(mat, dim, w, p, sys.ord2);
            classes.emplace(key, mat);
            return;
        }
        for (int i = lo; i < (int)columns.size(); ++i) {
            pick[pos] = i;
            self(self, pos + 1, i);
        }
    };
    if (w == 0) throw std::invalid_argument("component_reps: no free columns");
    rec_pick(rec_pick, 0, 0);

    // Materialize one module per gauge class.
    std::vector<ModuleCode> mods;
    for (const auto& [key, logs] : classes) {
        ModuleCode m;
        m.p = p;
        m.c = c;
        for (int r = 0; r < dim; ++r) {
            std::vector<RingElement> row(c, 0);
            row[r] = e;
            for (int j = 0; j < w; ++j) {
                if (logs[r * w + j] >= 0) row[dim + j] = pow_table[logs[r * w + j]];
            }
            m.rows.push_back(std::move(row));
        }
        // Rows generate over the field; the binary span needs the x-multiples.
        mods.push_back(m.module_closure());
    }

    // Merge residual equivalences (pivot/non-pivot mixing permutations) within
    // weight-distribution buckets.
    std::map<std::string, std::vector<int>> buckets;
    for (std::size_t i = 0; i < mods.size(); ++i)
        buckets[weight_dist_string(mods[i].binary_image())].push_back((int)i);
    std::vector<bool> dead(mods.size(), false);
    for (auto& [sig, idxs] : buckets) {
        for (std::size_t a = 0; a < idxs.size(); ++a) {
            if (dead[idxs[a]]) continue;
            for (std::size_t b = a + 1; b < idxs.size(); ++b) {
                if (dead[idxs[b]]) continue;
                if (transform_between(mods[idxs[a]], mods[idxs[b]])) dead[idxs[b]] = true;
            }
        }
    }
    std::vector<ModuleCode> out;
    for (std::size_t i = 0; i < mods.size(); ++i) {
        if (!dead[i]) out.push_back(mods[i]);
    }
    return out;
}

ModuleCode annihilator_component(const ModuleCode& m1) {
    IdealSystem sys = factor_cyclotomic(m1.p);
    if (sys.s() != 2) throw std::invalid_argument("annihilator_component: needs two components");
    int p = m1.p, c = m1.c;
    int j1 = component_index(m1, sys);
    check_pure_component(m1, j1, sys);
    int j2 = 1 - j1;
    RingElement e2 = sys.idempotents[j2];
    int deg = sys.ord2;
    int m = (int)field_rref(module_field_rows(m1), c, j1, sys).size();

    // Binary basis of the opposite component, with the pairing values against
    // every generator of m1 stacked as bit rows.
    std::vector<std::vector<RingElement>> basis_vecs;
    std::vector<BitVector> images;
    int bits = p * (int)m1.rows.size();
    if (bits > kMaxLen) throw std::invalid_argument("annihilator_component: too many constraints");
    for (int i = 0; i < c; ++i) {
        for (int t = 0; t < deg; ++t) {
            std::vector<RingElement> v(c, 0);
            v[i] = ring_mul(RingElement(1) << t, e2, p);
            BitVector img(bits);
            for (std::size_t r = 0; r < m1.rows.size(); ++r) {
                RingElement fv = form_value(m1.rows[r], v, p);
                for (int b = 0; b < p; ++b) {
                    if (fv >> b & 1) img.set((int)r * p + b, true);
                }
            }
            basis_vecs.push_back(std::move(v));
            images.push_back(img);
        }
    }
    ModuleCode out;
    out.p = p;
    out.c = c;
    for (const auto& tag : combination_kernel(images, bits)) {
        std::vector<RingElement> v(c, 0);
        for (std::size_t i = 0; i < basis_vecs.size(); ++i) {
            if (!tag.get((int)i)) continue;
            for (int x = 0; x < c; ++x) v[x] = ring_add(v[x], basis_vecs[i][x]);
        }
        out.rows.push_back(std::move(v));
    }
    out = out.reduced();
    if (!out.is_module_closed()) throw std::logic_error("annihilator_component: not x-closed");
    if (out.binary_image().k() != deg * (c - m))
        throw std::logic_error("annihilator_component: wrong dimension");
    return out;
}

ModuleCode join_components(const ModuleCode& m1, const ModuleCode& m2) {
    if (m1.p != m2.p || m1.c != m2.c) throw std::invalid_argument("join_components: shape mismatch");
    ModuleCode out;
    out.p = m1.p;
    out.c = m1.c;
    out.rows = m1.rows;
    out.rows.insert(out.rows.end(), m2.rows.begin(), m2.rows.end());
    out = out.reduced();
    if (!out.is_module_closed()) throw std::logic_error("join_components: not x-closed");
    return out;
}

// --- public: classification drivers -----------------------------------------

ClassificationReport classify_7_6_2(const ClassifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    ClassificationReport rep;
    rep.spec_line = "p=7 c=6 f=2";
    AutomorphismSpec sigma = AutomorphismSpec::standard(7, 6, 2);

    std::vector<std::pair<std::string, BinaryCode>> pis = {
        {"C2_4", BinaryCode::from_strings(8, {"10001000", "01000100", "00100010", "00010001"})},
        {"E8", BinaryCode::from_strings(8, {"10000111", "01001011", "00101101", "00011110"})}};
    std::map<std::string, std::vector<Perm>> pi_aut;
    for (const auto& [name, code] : pis) pi_aut[name] = automorphism_group(code).gens;

    std::vector<Candidate> cands;
    std::vector<std::string> run_order;
    for (int dim = 1; dim <= 3; ++dim) {
        std::vector<ModuleCode> reps = component_reps(6, dim);
        if (opt.progress)
            std::cerr << "# case " << case_name(dim) << ": " << reps.size()
                      << " component classes\n";
        for (const auto& [pname, pcode] : pis)
            run_order.push_back("case " + case_name(dim) + " pi=" + pname);
        for (std::size_t mi = 0; mi < reps.size(); ++mi) {
            ModuleCode m2 = annihilator_component(reps[mi]);
            ModuleCode cphi = join_components(reps[mi], m2);
            std::vector<Perm> left;
            for (const auto& g : transform_stabilizer_gens(reps[mi]))
                left.push_back(extend_identity(g, 8));
            left.push_back(Perm::from_cycles("(7,8)", 8));
            for (const auto& [pname, pcode] : pis) {
                std::vector<Perm> taus = double_coset_reps(left, pi_aut[pname], 8);
                for (const auto& tau : taus) {
                    BinaryCode cpi = pcode.permuted(tau);
                    if (!check_compatibility(cpi, cphi).ok())
                        throw std::logic_error("classify: incompatible pair");
                    BinaryCode cand = assemble(cpi, cphi, sigma);
                    if (cand.k() != 22 || !cand.is_self_dual())
                        throw std::logic_error("classify: assembled code not self-dual [44,22]");
                    cands.push_back({cand, "case " + case_name(dim) + " pi=" + pname,
                                     "case " + case_name(dim) + " pi=" + pname + " m1#" +
                                         std::to_string(mi + 1) + " tau=" + tau.to_cycles()});
                }
            }
        }
    }
    finish_runs(rep, cands, run_order, opt);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ClassificationReport classify_7_3_23(const ImportedDataset& ds, const ClassifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    ClassificationReport rep;
    rep.spec_line = "p=7 c=3 f=23";
    rep.input_checksums["dataset"] = ds.checksum;
    AutomorphismSpec sigma = AutomorphismSpec::standard(7, 3, 23);
    IdealSystem sys = factor_cyclotomic(7);

    ModuleCode m1;
    m1.p = 7;
    m1.c = 3;
    m1.rows.push_back({sys.idempotents[0], sys.idempotents[0], sys.idempotents[0]});
    m1 = m1.module_closure();
    ModuleCode cphi = join_components(m1, annihilator_component(m1));

    std::vector<Candidate> cands;
    std::vector<std::string> run_order;
    for (std::size_t di = 0; di < ds.codes.size(); ++di) {
        std::string run = "dataset " + ds.names[di];
        run_order.push_back(run);
        std::vector<BinaryCode> lifts = selfdual_lifts(ds.codes[di], 3);
        for (std::size_t li = 0; li < lifts.size(); ++li) {
            if (!check_compatibility(lifts[li], cphi).ok())
                throw std::logic_error("classify: incompatible pair");
            BinaryCode cand = assemble(lifts[li], cphi, sigma);
            if (cand.k() != 22 || !cand.is_self_dual())
                throw std::logic_error("classify: assembled code not self-dual [44,22]");
            cands.push_back({cand, run, run + " lift#" + std::to_string(li + 1)});
        }
    }
    finish_runs(rep, cands, run_order, opt);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ClassificationReport classify_3_restricted(const BinaryCode& c_pi, int cycle_block,
                                           const ModuleCode& c_phi, const std::string& label,
                                           const ClassifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    int c = cycle_block;
    int f = c_pi.n() - c;
    if (c_phi.p != 3 || c_phi.c != c)
        throw std::invalid_argument("classify_3_restricted: module shape mismatch");
    if (!c_pi.is_self_dual()) throw std::invalid_argument("classify_3_restricted: c_pi not self-dual");
    IdealSystem sys = factor_cyclotomic(3);
    if (!c_phi.is_module_closed() || !hermitian_selfdual_check(c_phi, sys).ok())
        throw std::invalid_argument("classify_3_restricted: module not Hermitian self-dual");

    ClassificationReport rep;
    rep.spec_line = "p=3 c=" + std::to_string(c) + " f=" + std::to_string(f);
    AutomorphismSpec sigma = AutomorphismSpec::standard(3, c, f);

    std::vector<int> coloring(c_pi.n(), 0);
    for (int i = c; i < c_pi.n(); ++i) coloring[i] = 1;
    std::vector<Perm> stab_cycle;
    for (const auto& g : automorphism_group(c_pi, coloring).gens) {
        std::vector<int> img(c);
        for (int i = 0; i < c; ++i) img[i] = g[i];
        stab_cycle.push_back(Perm::from_images(img));
    }
    std::vector<Perm> lgens = transform_stabilizer_gens(c_phi);
    if (opt.progress)
        std::cerr << "# " << label << ": module stabilizer generators " << lgens.size()
                  << ", projected-code stabilizer generators " << stab_cycle.size() << "\n";

    std::vector<Candidate> cands;
    std::vector<std::string> run_order{label};
    for (const auto& tau : double_coset_reps(lgens, stab_cycle, c)) {
        BinaryCode cpi = c_pi.permuted(extend_identity(tau, c_pi.n()));
        if (!check_compatibility(cpi, c_phi).ok())
            throw std::logic_error("classify: incompatible pair");
        BinaryCode cand = assemble(cpi, c_phi, sigma);
        if (cand.k() != 22 || !cand.is_self_dual())
            throw std::logic_error("classify: assembled code not self-dual [44,22]");
        cands.push_back({cand, label, label + " tau=" + tau.to_cycles()});
    }
    finish_runs(rep, cands, run_order, opt);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ClassificationReport merge_reports(const std::string& spec_line,
                                   const std::vector<const ClassificationReport*>& parts) {
    ClassificationReport rep;
    rep.spec_line = spec_line;
    std::set<std::string> seen;
    for (const ClassificationReport* r : parts) {
        for (const auto& cc : r->codes) {
            if (seen.insert(cc.key).second) rep.codes.push_back(cc);
        }
        for (const auto& rc : r->case_counts) rep.case_counts.push_back(rc);
        for (const auto& [name, sum] : r->input_checksums) rep.input_checksums[name] = sum;
        rep.seconds += r->seconds;
    }
    rep.finalize();
    return rep;
}

ClassificationReport classify_7(const ImportedDataset& ds, const ClassifyOptions& opt) {
    ClassificationReport a = classify_7_6_2(opt);
    ClassificationReport b = classify_7_3_23(ds, opt);
    return merge_reports("p=7 (types 6,2 and 3,23 merged)", {&a, &b});
}

ClassificationReport classify_spec(const std::string& compact_spec, const std::string& dataset_dir,
                                   const ClassifyOptions& opt) {
    auto with_dataset = [&](auto&& run) {
        if (dataset_dir.empty())
            throw std::invalid_argument(compact_spec +
                                        " needs --dataset with the three [23,10,8] codes"
                                        " (sdc dataset --derive DIR writes them)");
        DatasetExpectation exp = dataset_expectation_from_manifest(dataset_dir);
        return run(import_dataset(dataset_dir, exp));
    };
    if (compact_spec == "p=7")
        return with_dataset([&](const ImportedDataset& ds) { return classify_7(ds, opt); });
    AutomorphismSpec s = AutomorphismSpec::parse_compact(compact_spec);
    if (s.p == 7 && s.c == 6 && s.f == 2) return classify_7_6_2(opt);
    if (s.p == 7 && s.c == 3 && s.f == 23)
        return with_dataset([&](const ImportedDataset& ds) { return classify_7_3_23(ds, opt); });
    throw std::invalid_argument("unsupported spec " + compact_spec +
                                " (supported: p=7; p=7,c=6,f=2; p=7,c=3,f=23;"
                                " order-3 runs go through --pi/--phi)");
}

// --- public: reports ---------------------------------------------------------

void ClassificationReport::finalize() {
    std::sort(codes.begin(), codes.end(), [](const ClassifiedCode& a, const ClassifiedCode& b) {
        if (a.profile.family != b.profile.family) return a.profile.family < b.profile.family;
        if (a.profile.beta != b.profile.beta) return a.profile.beta < b.profile.beta;
        return a.key < b.key;
    });
    histogram.clear();
    for (const auto& cc : codes) {
        if (!histogram.empty() && histogram.back().family == cc.profile.label() &&
            histogram.back().beta == cc.profile.beta) {
            ++histogram.back().count;
        } else {
            histogram.push_back({cc.profile.label(), cc.profile.beta, 1});
        }
    }
}

std::string ClassificationReport::render(bool with_matrices) const {
    std::ostringstream os;
    os << "# classification " << spec_line << "\n";
    os << "# codes: " << codes.size() << "\n";
    for (const auto& h : histogram) os << h.family << ' ' << h.beta << ' ' << h.count << "\n";
    os << "TOTAL " << codes.size() << "\n";
    if (!case_counts.empty()) {
        os << "# construction runs\n";
        for (const auto& [run, count] : case_counts) os << run << ": " << count << "\n";
    }
    if (!input_checksums.empty()) {
        os << "# inputs\n";
        for (const auto& [name, sum] : input_checksums) os << name << " checksum=" << sum << "\n";
    }
    os << "# representatives (family beta aut key provenance)\n";
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const auto& cc = codes[i];
        os << i + 1 << ' ' << cc.profile.label() << ' ' << cc.profile.beta << ' ' << cc.aut_order
           << ' ' << hex64(fnv1a64(cc.key)) << ' ' << cc.provenance << "\n";
        if (with_matrices) {
            for (const auto& row : cc.code.rows()) os << "  " << row.to_string() << "\n";
        }
    }
    os << "# time " << seconds << "s\n";
    return os.str();
}

ExpectTable read_expect(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    ExpectTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string family;
        if (!(ls >> family)) continue;
        if (family == "TOTAL") {
            if (!(ls >> table.total))
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad TOTAL line");
            continue;
        }
        ProfileCount pc;
        pc.family = family;
        if (!(ls >> pc.beta >> pc.count))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected FAMILY BETA COUNT");
        table.lines.push_back(pc);
    }
    return table;
}

std::string check_expect(const ClassificationReport& rep, const ExpectTable& expect) {
    auto fmt = [](const ProfileCount& pc) {
        return pc.family + " " + std::to_string(pc.beta) + " -> " + std::to_string(pc.count);
    };
    std::map<std::pair<std::string, int>, int> want, have;
    for (const auto& pc : expect.lines) want[{pc.family, pc.beta}] += pc.count;
    for (const auto& pc : rep.histogram) have[{pc.family, pc.beta}] += pc.count;
    for (const auto& [fb, count] : want) {
        auto it = have.find(fb);
        int got = it == have.end() ? 0 : it->second;
        if (got != count)
            return "expected " + fb.first + " " + std::to_string(fb.second) + " count " +
                   std::to_string(count) + ", got " + std::to_string(got);
    }
    for (const auto& [fb, count] : have) {
        if (!want.count(fb))
            return "unexpected profile " + fmt({fb.first, fb.second, count});
    }
    if (expect.total >= 0 && (int)rep.codes.size() != expect.total)
        return "expected " + std::to_string(expect.total) + " codes, got " +
               std::to_string(rep.codes.size());
    return "";
}

}  // namespace sdcode
