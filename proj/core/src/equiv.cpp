#include "sdcode/equiv.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sdcode {

namespace {

constexpr std::uint64_t kNodeCap = 4000000;

// Union of whole weight classes, smallest weights first, until the words span
// the code. Any coordinate permutation mapping code to code permutes this set.
struct WordSet {
    int n = 0;
    std::vector<BitVector> words;              // sorted
    std::vector<std::pair<int, int>> classes;  // (weight, count) per included class
};

WordSet build_word_set(const BinaryCode& c) {
    WordSet ws;
    ws.n = c.n();
    if (c.k() == 0) return ws;
    WeightDistribution wd = weight_distribution(c, 26);
    std::vector<BitVector> basis;
    int rank = 0;
    for (int w = 1; w <= c.n() && rank < c.k(); ++w) {
        if (!wd.counts[w]) continue;
        auto cls = codewords_of_weights(c, {w}, 26);
        ws.classes.emplace_back(w, (int)cls.size());
        for (const auto& v : cls) {
            ws.words.push_back(v);
            basis.push_back(v);
        }
        if (ws.words.size() > (std::size_t{1} << 20))
            throw std::runtime_error("equivalence word set too large");
        RrefResult rr = rref(std::move(basis), c.n());
        rank = rr.rank;
        basis = std::move(rr.rows);
    }
    std::sort(ws.words.begin(), ws.words.end());
    return ws;
}

using Partition = std::vector<std::vector<int>>;

void append_u32(std::string& s, std::uint32_t v) {
    s.push_back((char)(v & 0xff));
    s.push_back((char)((v >> 8) & 0xff));
    s.push_back((char)((v >> 16) & 0xff));
    s.push_back((char)((v >> 24) & 0xff));
}

// Cells ordered by ascending color value; empty coloring = one color.
Partition partition_from_coloring(int n, const std::vector<int>& coloring) {
    Partition p;
    if (coloring.empty()) {
        p.emplace_back(n);
        std::iota(p[0].begin(), p[0].end(), 0);
        return p;
    }
    if ((int)coloring.size() != n)
        throw std::invalid_argument("coloring length must equal code length");
    std::map<int, std::vector<int>> by;
    for (int i = 0; i < n; ++i) by[coloring[i]].push_back(i);
    for (auto& [value, members] : by) p.push_back(std::move(members));
    return p;
}

// Value-significant color summary, for compatibility checks and key headers.
std::vector<std::pair<int, int>> color_profile(int n, const std::vector<int>& coloring) {
    std::map<int, int> m;
    if (coloring.empty()) {
        m[0] = n;
    } else {
        for (int c : coloring) m[c]++;
    }
    return {m.begin(), m.end()};
}

int first_nonsingleton(const Partition& p) {
    for (int i = 0; i < (int)p.size(); ++i) {
        if (p[i].size() > 1) return i;
    }
    return -1;
}

Partition individualized(const Partition& p, int ci, int v) {
    Partition q;
    q.reserve(p.size() + 1);
    for (int i = 0; i < (int)p.size(); ++i) {
        if (i != ci) {
            q.push_back(p[i]);
            continue;
        }
        q.push_back({v});
        std::vector<int> rest;
        rest.reserve(p[i].size() - 1);
        for (int x : p[i]) {
            if (x != v) rest.push_back(x);
        }
        q.push_back(std::move(rest));
    }
    return q;
}

// Equitable refinement against word incidence. Each coordinate's signature is
// its incidence count with every word type, a word's type being its profile of
// intersection sizes with the cells. Runs to a fixpoint; appends a
// label-invariant byte record of the evolution to `trace`.
struct RefineEngine {
    int n = 0;
    const WordSet* ws = nullptr;

    void refine(Partition& part, std::string& trace) const {
        for (;;) {
            int ncells = (int)part.size();
            append_u32(trace, 0xffffffffu);
            append_u32(trace, (std::uint32_t)ncells);
            if (ws->words.empty() || ncells == n) {
                for (const auto& cell : part) append_u32(trace, (std::uint32_t)cell.size());
                return;
            }
            std::vector<BitVector> mask(ncells, BitVector(n));
            for (int ci = 0; ci < ncells; ++ci) {
                for (int x : part[ci]) mask[ci].set(x, true);
            }
            std::size_t nw = ws->words.size();
            std::vector<std::vector<int>> typevec(nw);
            for (std::size_t wi = 0; wi < nw; ++wi) {
                const BitVector& w = ws->words[wi];
                auto& tv = typevec[wi];
                tv.resize(ncells);
                for (int ci = 0; ci < ncells; ++ci) {
                    tv[ci] = __builtin_popcountll(w.w[0] & mask[ci].w[0]) +
                             __builtin_popcountll(w.w[1] & mask[ci].w[1]);
                }
            }
            std::vector<std::vector<int>> uniq = typevec;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            int ntypes = (int)uniq.size();
            std::vector<std::uint32_t> cnt((std::size_t)n * ntypes, 0);
            for (std::size_t wi = 0; wi < nw; ++wi) {
                int tid = (int)(std::lower_bound(uniq.begin(), uniq.end(), typevec[wi]) -
                                uniq.begin());
                const BitVector& w = ws->words[wi];
                for (int limb = 0; limb < 2; ++limb) {
                    std::uint64_t bits = w.w[limb];
                    while (bits) {
                        int i = limb * 64 + __builtin_ctzll(bits);
                        bits &= bits - 1;
                        cnt[(std::size_t)i * ntypes + tid]++;
                    }
                }
            }
            auto sig_of = [&](int i) { return &cnt[(std::size_t)i * ntypes]; };
            auto sig_less = [&](int x, int y) {
                return std::lexicographical_compare(sig_of(x), sig_of(x) + ntypes, sig_of(y),
                                                    sig_of(y) + ntypes);
            };
            auto sig_eq = [&](int x, int y) {
                return std::equal(sig_of(x), sig_of(x) + ntypes, sig_of(y));
            };
            Partition next;
            next.reserve(ncells);
            bool split = false;
            for (int ci = 0; ci < ncells; ++ci) {
                std::vector<int> cell = part[ci];
                std::sort(cell.begin(), cell.end(), [&](int x, int y) {
                    if (sig_less(x, y)) return true;
                    if (sig_less(y, x)) return false;
                    return x < y;
                });
                std::vector<std::pair<int, int>> subs;  // (start, len)
                int start = 0;
                for (int j = 1; j <= (int)cell.size(); ++j) {
                    if (j == (int)cell.size() || !sig_eq(cell[start], cell[j])) {
                        subs.emplace_back(start, j - start);
                        start = j;
                    }
                }
                append_u32(trace, (std::uint32_t)subs.size());
                for (auto [st, len] : subs) {
                    append_u32(trace, (std::uint32_t)len);
                    append_u32(trace, (std::uint32_t)fnv1a64(sig_of(cell[st]),
                                                             sizeof(std::uint32_t) * ntypes));
                    next.emplace_back(cell.begin() + st, cell.begin() + st + len);
                }
                if (subs.size() > 1) split = true;
            }
            part = std::move(next);
            if (!split) return;
        }
    }
};

// Lockstep backtracking isomorphism search: one branch vertex on the A side,
// all images on the B side, refinement traces compared for pruning. Exhaustive
// up to the sound pruning, so failure proves nonexistence.
struct IsoSearch {
    const WordSet* wa = nullptr;
    const WordSet* wb = nullptr;
    RefineEngine ra, rb;
    std::uint64_t nodes = 0;
    std::optional<Perm> found;

    bool run(Partition pa, Partition pb) {
        std::string ta, tb;
        ra.refine(pa, ta);
        rb.refine(pb, tb);
        if (ta != tb) return false;
        if (++nodes > kNodeCap) throw std::runtime_error("isomorphism search node cap exceeded");
        int ci = first_nonsingleton(pa);
        if (ci < 0) {
            std::vector<int> img(wa->n);
            for (std::size_t j = 0; j < pa.size(); ++j) img[pa[j][0]] = pb[j][0];
            for (const BitVector& w : wa->words) {
                BitVector m(wb->n);
                for (int limb = 0; limb < 2; ++limb) {
                    std::uint64_t bits = w.w[limb];
                    while (bits) {
                        int i = limb * 64 + __builtin_ctzll(bits);
                        bits &= bits - 1;
                        m.set(img[i], true);
                    }
                }
                if (!std::binary_search(wb->words.begin(), wb->words.end(), m)) return false;
            }
            found = Perm::from_images(img);
            return true;
        }
        int a = pa[ci][0];
        for (int v : pb[ci]) {
            if (run(individualized(pa, ci, a), individualized(pb, ci, v))) return true;
        }
        return false;
    }
};

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > UINT64_MAX / b) throw std::overflow_error("group order exceeds 64 bits");
    return a * b;
}

// Aut of the zero code: every color-preserving permutation.
AutGroupResult trivial_code_aut(int n, const Partition& initial) {
    AutGroupResult r;
    for (const auto& cell : initial) {
        int m = (int)cell.size();
        for (int i = 2; i <= m; ++i) r.order = checked_mul(r.order, i);
        if (m < 2) continue;
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        img[cell[0]] = cell[1];
        img[cell[1]] = cell[0];
        r.gens.push_back(Perm::from_images(img));
        if (m > 2) {
            std::iota(img.begin(), img.end(), 0);
            for (int i = 0; i < m; ++i) img[cell[i]] = cell[(i + 1) % m];
            r.gens.push_back(Perm::from_images(img));
        }
    }
    return r;
}

// Orbit-stabilizer chain down the refinement tree's leftmost path. At each
// level the orbit of the branch vertex under the pointwise stabilizer of the
// individualized prefix is established exactly: membership by closure under
// found automorphisms, non-membership by exhausted search. The group order is
// the product of orbit sizes and the found automorphisms generate the group.
AutGroupResult compute_aut(const Partition& initial, const WordSet& ws) {
    int n = ws.n;
    if (ws.words.empty()) return trivial_code_aut(n, initial);
    RefineEngine re{n, &ws};
    Partition pi = initial;
    std::string tr;
    re.refine(pi, tr);
    AutGroupResult result;
    for (;;) {
        int ci = first_nonsingleton(pi);
        if (ci < 0) break;
        int b = pi[ci][0];
        std::vector<Perm> level_gens;
        std::vector<char> in_orbit(n, 0);
        in_orbit[b] = 1;
        std::vector<int> orbit{b};
        auto close_orbit = [&]() {
            for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
                for (const auto& g : level_gens) {
                    int y = g[orbit[qi]];
                    if (!in_orbit[y]) {
                        in_orbit[y] = 1;
                        orbit.push_back(y);
                    }
                }
            }
        };
        for (int v : pi[ci]) {
            if (in_orbit[v]) continue;
            IsoSearch is;
            is.wa = is.wb = &ws;
            is.ra = is.rb = re;
            if (is.run(individualized(pi, ci, b), individualized(pi, ci, v))) {
                level_gens.push_back(*is.found);
                result.gens.push_back(*is.found);
                close_orbit();
            }
        }
        result.order = checked_mul(result.order, orbit.size());
        pi = individualized(pi, ci, b);
        std::string t2;
        re.refine(pi, t2);
    }
    PermGroup check = PermGroup::generated_by(result.gens, n);
    if (check.order() != result.order)
        throw std::logic_error("automorphism chain disagrees with generated group order");
    return result;
}

// Canonical-labeling search: minimizes (refinement trace, relabeled word set)
// over the tree, branching only on orbit representatives of the pointwise
// prefix stabilizer inside the full (known) automorphism group.
struct CanonSearch {
    int n = 0;
    const WordSet* ws = nullptr;
    RefineEngine re;
    const std::vector<Perm>* aut_gens = nullptr;
    std::uint64_t nodes = 0;

    bool have_best = false;
    std::string best_trace;
    std::string best_cert;
    std::vector<int> best_img;

    std::string leaf_cert(const std::vector<int>& img) const {
        int bytes = (n + 7) / 8;
        std::vector<BitVector> rel;
        rel.reserve(ws->words.size());
        for (const BitVector& w : ws->words) {
            BitVector m(n);
            for (int limb = 0; limb < 2; ++limb) {
                std::uint64_t bits = w.w[limb];
                while (bits) {
                    int i = limb * 64 + __builtin_ctzll(bits);
                    bits &= bits - 1;
                    m.set(img[i], true);
                }
            }
            rel.push_back(m);
        }
        std::sort(rel.begin(), rel.end());
        std::string cert;
        cert.reserve(rel.size() * bytes);
        for (const auto& m : rel) {
            for (int bidx = 0; bidx < bytes; ++bidx)
                cert.push_back((char)((m.w[bidx / 8] >> (8 * (bidx % 8))) & 0xff));
        }
        return cert;
    }

    void explore(Partition pi, std::vector<int> prefix, std::string trace) {
        re.refine(pi, trace);
        if (have_best) {
            std::size_t m = std::min(trace.size(), best_trace.size());
            int cmp = std::memcmp(trace.data(), best_trace.data(), m);
            if (cmp > 0) return;
            if (cmp < 0) {
                have_best = false;
            } else if (trace.size() > best_trace.size()) {
                throw std::logic_error("canonical search trace misalignment");
            }
        }
        if (++nodes > kNodeCap) throw std::runtime_error("canonical search node cap exceeded");
        int ci = first_nonsingleton(pi);
        if (ci < 0) {
            std::vector<int> img(n);
            for (std::size_t j = 0; j < pi.size(); ++j) img[pi[j][0]] = (int)j;
            std::string cert = leaf_cert(img);
            if (!have_best || cert < best_cert) {
                have_best = true;
                best_trace = std::move(trace);
                best_cert = std::move(cert);
                best_img = std::move(img);
            }
            return;
        }
        std::vector<Perm> sg;
        if (prefix.empty()) {
            sg = *aut_gens;
        } else {
            sg = PermGroup::with_base(prefix, *aut_gens, n).stabilizer_gens((int)prefix.size());
        }
        std::vector<int> reps;
        if (sg.empty()) {
            reps = pi[ci];
        } else {
            auto orbs = point_orbits(sg, n);
            std::vector<int> oid(n, -1);
            for (int k = 0; k < (int)orbs.size(); ++k) {
                for (int x : orbs[k]) oid[x] = k;
            }
            std::vector<char> seen(orbs.size(), 0);
            for (int v : pi[ci]) {
                if (!seen[oid[v]]) {
                    seen[oid[v]] = 1;
                    reps.push_back(v);
                }
            }
        }
        for (int v : reps) {
            std::vector<int> pre2 = prefix;
            pre2.push_back(v);
            std::string t2 = trace;
            append_u32(t2, (std::uint32_t)ci);
            explore(individualized(pi, ci, v), std::move(pre2), std::move(t2));
        }
    }
};

std::string key_header(const BinaryCode& c, const std::vector<std::pair<int, int>>& colors) {
    std::ostringstream os;
    os << "n" << c.n() << "k" << c.k() << "c";
    for (auto [value, size] : colors) os << value << ":" << size << ",";
    os << "|";
    return os.str();
}

std::string serialize_rref(const BinaryCode& c) {
    std::ostringstream os;
    for (const auto& r : c.rows()) os << r.to_string() << ";";
    return os.str();
}

}  // namespace

AutGroupResult automorphism_group(const BinaryCode& code, const std::vector<int>& coloring) {
    WordSet ws = build_word_set(code);
    return compute_aut(partition_from_coloring(code.n(), coloring), ws);
}

CanonicalResult canonical_form(const BinaryCode& code, const std::vector<int>& coloring) {
    int n = code.n();
    if (n < 1) throw std::invalid_argument("canonical_form: empty code length");
    WordSet ws = build_word_set(code);
    Partition initial = partition_from_coloring(n, coloring);
    CanonicalResult res;
    res.aut = compute_aut(initial, ws);
    std::vector<int> img(n);
    if (ws.words.empty()) {
        int pos = 0;
        for (const auto& cell : initial) {
            for (int x : cell) img[x] = pos++;
        }
    } else {
        CanonSearch cs;
        cs.n = n;
        cs.ws = &ws;
        cs.re = RefineEngine{n, &ws};
        cs.aut_gens = &res.aut.gens;
        cs.explore(initial, {}, "");
        if (!cs.have_best) throw std::logic_error("canonical search found no leaf");
        img = cs.best_img;
    }
    res.labeling = Perm::from_images(img);
    res.key = key_header(code, color_profile(n, coloring)) +
              serialize_rref(code.permuted(res.labeling));
    return res;
}

std::string canonical_key(const BinaryCode& code, const std::vector<int>& coloring) {
    return canonical_form(code, coloring).key;
}

std::optional<Perm> equivalence_map(const BinaryCode& a, const BinaryCode& b,
                                    const std::vector<int>& coloring_a,
                                    const std::vector<int>& coloring_b) {
    if (a.n() != b.n() || a.k() != b.k()) return std::nullopt;
    int n = a.n();
    auto ca = color_profile(n, coloring_a);
    auto cb = color_profile(n, coloring_b);
    if (ca != cb) return std::nullopt;
    Partition pa = partition_from_coloring(n, coloring_a);
    Partition pb = partition_from_coloring(n, coloring_b);
    if (a.k() == 0) {
        std::vector<int> img(n);
        for (std::size_t c = 0; c < pa.size(); ++c) {
            for (std::size_t i = 0; i < pa[c].size(); ++i) img[pa[c][i]] = pb[c][i];
        }
        return Perm::from_images(img);
    }
    WordSet wa = build_word_set(a);
    WordSet wb = build_word_set(b);
    if (wa.classes != wb.classes) return std::nullopt;
    IsoSearch is;
    is.wa = &wa;
    is.wb = &wb;
    is.ra = RefineEngine{n, &wa};
    is.rb = RefineEngine{n, &wb};
    if (!is.run(pa, pb)) return std::nullopt;
    if (a.permuted(*is.found) != b) throw std::logic_error("equivalence witness failed verification");
    return is.found;
}

bool codes_equivalent(const BinaryCode& a, const BinaryCode& b) {
    return equivalence_map(a, b).has_value();
}

bool brute_force_equivalent(const BinaryCode& a, const BinaryCode& b) {
    if (a.n() != b.n()) return false;
    if (a.n() > 10) throw std::invalid_argument("brute_force_equivalent: n > 10");
    if (a.k() != b.k()) return false;
    std::vector<int> img(a.n());
    std::iota(img.begin(), img.end(), 0);
    do {
        if (a.permuted(Perm::from_images(img)) == b) return true;
    } while (std::next_permutation(img.begin(), img.end()));
    return false;
}

std::uint64_t brute_force_aut_order(const BinaryCode& c) {
    if (c.n() > 10) throw std::invalid_argument("brute_force_aut_order: n > 10");
    std::vector<int> img(c.n());
    std::iota(img.begin(), img.end(), 0);
    std::uint64_t count = 0;
    do {
        if (c.permuted(Perm::from_images(img)) == c) ++count;
    } while (std::next_permutation(img.begin(), img.end()));
    return count;
}

}  // namespace sdcode
