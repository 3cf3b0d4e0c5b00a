#include "sdcode/perm.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace sdcode {

Perm Perm::from_images(const std::vector<int>& images) {
    Perm p;
    p.img_.resize(images.size());
    std::vector<bool> seen(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
        int v = images[i];
        if (v < 0 || v >= (int)images.size() || seen[v])
            throw std::invalid_argument("Perm: not a permutation");
        seen[v] = true;
        p.img_[i] = (std::uint8_t)v;
    }
    return p;
}

Perm Perm::from_cycles(const std::string& s, int degree) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    std::vector<int> cyc;
    bool in_cycle = false;
    std::string num;
    auto flush_num = [&]() {
        if (!num.empty()) {
            int v = std::stoi(num) - 1;
            if (v < 0 || v >= degree) throw std::invalid_argument("Perm: point out of range in " + s);
            cyc.push_back(v);
            num.clear();
        }
    };
    auto close_cycle = [&]() {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            img[from] = to;
        }
        cyc.clear();
    };
    for (char ch : s) {
        if (ch == '(') {
            if (in_cycle) throw std::invalid_argument("Perm: nested cycle in " + s);
            in_cycle = true;
        } else if (ch == ')') {
            if (!in_cycle) throw std::invalid_argument("Perm: stray ')' in " + s);
            flush_num();
            close_cycle();
            in_cycle = false;
        } else if (ch >= '0' && ch <= '9') {
            num.push_back(ch);
        } else if (ch == ',' || ch == ' ' || ch == '\t') {
            flush_num();
        } else {
            throw std::invalid_argument("Perm: bad character in " + s);
        }
    }
    if (in_cycle) throw std::invalid_argument("Perm: unclosed cycle in " + s);
    // Validate result is a permutation (duplicated points in cycles would break it).
    return from_images(img);
}

bool Perm::is_identity() const {
    for (int i = 0; i < degree(); ++i) {
        if (img_[i] != i) return false;
    }
    return true;
}

Perm Perm::operator*(const Perm& o) const {
    if (degree() != o.degree()) throw std::invalid_argument("Perm: degree mismatch");
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = img_[o.img_[i]];
    return r;
}

Perm Perm::inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = (std::uint8_t)i;
    return r;
}

std::string Perm::to_cycles() const {
    std::string s;
    std::vector<bool> seen(img_.size(), false);
    for (int i = 0; i < degree(); ++i) {
        if (seen[i] || img_[i] == i) continue;
        s.push_back('(');
        int j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) s.push_back(',');
            s += std::to_string(j + 1);
            first = false;
            j = img_[j];
        }
        s.push_back(')');
    }
    if (s.empty()) s = "()";
    return s;
}

std::vector<std::pair<int, int>> Perm::cycle_type() const {
    std::map<int, int> lens;
    std::vector<bool> seen(img_.size(), false);
    for (int i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            ++len;
            j = img_[j];
        }
        lens[len]++;
    }
    return {lens.begin(), lens.end()};
}

PermGroup::PermGroup(int degree) : degree_(degree) {
    if (degree < 0 || degree > 128) throw std::invalid_argument("PermGroup: bad degree");
}

PermGroup PermGroup::generated_by(const std::vector<Perm>& gens, int degree) {
    PermGroup g(degree);
    for (const auto& p : gens) g.extend(p);
    return g;
}

PermGroup PermGroup::with_base(const std::vector<int>& base_prefix, const std::vector<Perm>& gens,
                               int degree) {
    PermGroup g(degree);
    for (int b : base_prefix) {
        if (b < 0 || b >= degree) throw std::invalid_argument("with_base: point out of range");
        Level lv;
        lv.base_point = b;
        lv.u.assign(degree, std::nullopt);
        lv.u[b] = Perm::identity(degree);
        lv.orbit.push_back(b);
        g.levels_.push_back(std::move(lv));
    }
    for (const auto& p : gens) g.extend(p);
    return g;
}

std::vector<Perm> PermGroup::stabilizer_gens(int fixed) const {
    std::vector<Perm> out;
    for (std::size_t li = fixed; li < levels_.size(); ++li) {
        for (const auto& p : levels_[li].gens) out.push_back(p);
    }
    return out;
}

std::pair<Perm, int> PermGroup::strip(const Perm& p) const {
    Perm res = p;
    for (std::size_t li = 0; li < levels_.size(); ++li) {
        const Level& lv = levels_[li];
        int x = res[lv.base_point];
        if (x == lv.base_point) continue;
        if (x >= (int)lv.u.size() || !lv.u[x]) return {res, (int)li};
        res = lv.u[x]->inverse() * res;
    }
    return {res, (int)levels_.size()};
}

std::vector<Perm> PermGroup::level_stab_gens(int li) const {
    std::vector<Perm> out;
    for (std::size_t l = li; l < levels_.size(); ++l) {
        for (const auto& p : levels_[l].gens) out.push_back(p);
    }
    return out;
}

void PermGroup::rebuild_orbit(int li) {
    Level& lv = levels_[li];
    std::vector<Perm> sg = level_stab_gens(li);
    lv.orbit.clear();
    lv.u.assign(degree_, std::nullopt);
    lv.u[lv.base_point] = Perm::identity(degree_);
    lv.orbit.push_back(lv.base_point);
    for (std::size_t qi = 0; qi < lv.orbit.size(); ++qi) {
        int x = lv.orbit[qi];
        for (const Perm& h : sg) {
            int y = h[x];
            if (!lv.u[y]) {
                lv.u[y] = h * *lv.u[x];
                lv.orbit.push_back(y);
            }
        }
    }
}

// Assign a non-identity strong generator to the first level whose base it
// moves, appending a fresh level (based at its first moved point) when it
// fixes every existing base.
void PermGroup::insert_strong(const Perm& s) {
    for (auto& lv : levels_) {
        if (s[lv.base_point] != lv.base_point) {
            lv.gens.push_back(s);
            return;
        }
    }
    int bp = -1;
    for (int i = 0; i < degree_; ++i) {
        if (s[i] != i) { bp = i; break; }
    }
    Level nl;
    nl.base_point = bp;
    levels_.push_back(nl);
    levels_.back().gens.push_back(s);
}

// Rebuild the orbit at one level and sift its Schreier generators through the
// deeper chain. Returns true after inserting the first non-trivial residue
// (always at a deeper level, since Schreier generators fix this level's base);
// false once every residue strips to identity.
bool PermGroup::process_level(int li) {
    rebuild_orbit(li);
    Level& lv = levels_[li];
    std::vector<Perm> sg = level_stab_gens(li);
    for (std::size_t qi = 0; qi < lv.orbit.size(); ++qi) {
        int x = lv.orbit[qi];
        for (const Perm& h : sg) {
            Perm s = lv.u[h[x]]->inverse() * (h * *lv.u[x]);
            if (s.is_identity()) continue;
            auto [res, at] = strip(s);
            (void)at;
            if (res.is_identity()) continue;
            insert_strong(res);
            return true;
        }
    }
    return false;
}

// Deepest-first completion: when a level inserts a residue, every deeper level
// is re-completed before that level is rescanned, so at the moment any level
// is scanned the chain below it is complete. Each insertion then strictly
// grows a stabilizer subgroup, which bounds the loop.
void PermGroup::close_chain() {
    int li = (int)levels_.size() - 1;
    while (li >= 0) {
        if (process_level(li)) {
            li = (int)levels_.size() - 1;
        } else {
            --li;
        }
    }
}

void PermGroup::extend(const Perm& g) {
    if (g.degree() != degree_) throw std::invalid_argument("PermGroup: degree mismatch");
    if (g.is_identity()) return;
    if (contains(g)) return;
    gens_.push_back(g);
    insert_strong(g);
    close_chain();
}

std::uint64_t PermGroup::order() const {
    std::uint64_t o = 1;
    for (const auto& lv : levels_) {
        std::uint64_t next = o * (std::uint64_t)lv.orbit.size();
        if (next / lv.orbit.size() != o) throw std::overflow_error("PermGroup: order overflow");
        o = next;
    }
    return o;
}

bool PermGroup::contains(const Perm& p) const {
    if (p.degree() != degree_) return false;
    auto [res, li] = strip(p);
    (void)li;
    return res.is_identity();
}

std::vector<int> PermGroup::orbit_of(int point) const {
    auto orbs = point_orbits(gens_, degree_);
    for (const auto& o : orbs) {
        if (std::find(o.begin(), o.end(), point) != o.end()) return o;
    }
    return {point};
}

Perm PermGroup::random_element(std::mt19937_64& rng) const {
    Perm p = Perm::identity(degree_);
    for (const auto& lv : levels_) {
        std::uniform_int_distribution<std::size_t> d(0, lv.orbit.size() - 1);
        p = p * *lv.u[lv.orbit[d(rng)]];
    }
    return p;
}

std::vector<std::vector<int>> point_orbits(const std::vector<Perm>& gens, int n_points) {
    std::vector<int> comp(n_points, -1);
    std::vector<std::vector<int>> orbits;
    for (int s = 0; s < n_points; ++s) {
        if (comp[s] >= 0) continue;
        int id = (int)orbits.size();
        orbits.push_back({s});
        comp[s] = id;
        for (std::size_t qi = 0; qi < orbits[id].size(); ++qi) {
            int x = orbits[id][qi];
            for (const auto& g : gens) {
                int y = g[x];
                if (comp[y] < 0) {
                    comp[y] = id;
                    orbits[id].push_back(y);
                }
            }
        }
    }
    return orbits;
}

std::vector<std::vector<int>> orbit_reps_on_subsets(const std::vector<Perm>& gens, int n, int c) {
    if (n < 0 || n > 32 || c < 0 || c > n)
        throw std::invalid_argument("orbit_reps_on_subsets: need 0 <= c <= n <= 32");
    for (const auto& g : gens) {
        if (g.degree() != n) throw std::invalid_argument("orbit_reps_on_subsets: degree mismatch");
    }
    auto apply = [&](const Perm& g, std::uint32_t m) {
        std::uint32_t r = 0;
        while (m) {
            int i = __builtin_ctz(m);
            m &= m - 1;
            r |= std::uint32_t(1) << g[i];
        }
        return r;
    };
    std::unordered_set<std::uint32_t> visited;
    std::vector<std::vector<int>> reps;
    if (c == 0) return {std::vector<int>{}};
    // Gosper's hack enumerates c-subsets in increasing mask order.
    std::uint32_t m = (std::uint32_t(1) << c) - 1;
    std::uint32_t limit = (n == 32) ? 0xffffffffu : ((std::uint32_t(1) << n) - 1);
    while (m <= limit) {
        if (!visited.count(m)) {
            // New orbit; BFS it.
            std::vector<std::uint32_t> q{m};
            visited.insert(m);
            for (std::size_t qi = 0; qi < q.size(); ++qi) {
                for (const auto& g : gens) {
                    std::uint32_t y = apply(g, q[qi]);
                    if (visited.insert(y).second) q.push_back(y);
                }
            }
            std::vector<int> idx;
            std::uint32_t mm = m;
            while (mm) {
                idx.push_back(__builtin_ctz(mm));
                mm &= mm - 1;
            }
            reps.push_back(idx);
        }
        // next combination
        std::uint32_t cbit = m & (~m + 1), r = m + cbit;
        if (r < m) break;  // overflow
        m = (((r ^ m) >> 2) / cbit) | r;
    }
    return reps;
}

namespace {

std::uint64_t factorial(int d) {
    std::uint64_t f = 1;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

// Lehmer rank of a permutation given as images, O(d^2).
std::uint32_t perm_rank(const std::uint8_t* img, int d, const std::uint64_t* fact) {
    std::uint32_t rank = 0;
    for (int i = 0; i < d; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < d; ++j) smaller += img[j] < img[i];
        rank += (std::uint32_t)(smaller * fact[d - 1 - i]);
    }
    return rank;
}

void perm_unrank(std::uint32_t rank, int d, const std::uint64_t* fact, std::uint8_t* img) {
    std::uint8_t avail[16];
    for (int i = 0; i < d; ++i) avail[i] = (std::uint8_t)i;
    int navail = d;
    for (int i = 0; i < d; ++i) {
        std::uint32_t f = (std::uint32_t)fact[d - 1 - i];
        int idx = (int)(rank / f);
        rank %= f;
        img[i] = avail[idx];
        for (int j = idx; j < navail - 1; ++j) avail[j] = avail[j + 1];
        --navail;
    }
}

}  // namespace

std::vector<Perm> double_coset_reps(const std::vector<Perm>& left_gens,
                                    const std::vector<Perm>& right_gens, int degree) {
    if (degree < 1 || degree > 12) throw std::invalid_argument("double_coset_reps: degree must be 1..12");
    for (const auto& g : left_gens) {
        if (g.degree() != degree) throw std::invalid_argument("double_coset_reps: left degree mismatch");
    }
    for (const auto& g : right_gens) {
        if (g.degree() != degree) throw std::invalid_argument("double_coset_reps: right degree mismatch");
    }
    std::uint64_t fact[13];
    fact[0] = 1;
    for (int i = 1; i <= 12; ++i) fact[i] = fact[i - 1] * i;
    std::uint64_t total = factorial(degree);
    std::vector<std::uint64_t> visited((total + 63) / 64, 0);
    auto test_and_set = [&](std::uint32_t r) {
        std::uint64_t& w = visited[r >> 6];
        std::uint64_t m = std::uint64_t(1) << (r & 63);
        bool was = w & m;
        w |= m;
        return was;
    };

    // Flatten generators for speed.
    std::vector<std::array<std::uint8_t, 12>> lg, rg;
    for (const auto& g : left_gens) {
        std::array<std::uint8_t, 12> a{};
        for (int i = 0; i < degree; ++i) a[i] = (std::uint8_t)g[i];
        lg.push_back(a);
    }
    for (const auto& g : right_gens) {
        std::array<std::uint8_t, 12> a{};
        for (int i = 0; i < degree; ++i) a[i] = (std::uint8_t)g[i];
        rg.push_back(a);
    }

    std::vector<Perm> reps;
    std::vector<std::uint32_t> queue;
    std::uint64_t seen = 0;
    for (std::uint64_t start = 0; start < total; ++start) {
        if (visited[start >> 6] >> (start & 63) & 1) continue;
        // New double coset.
        std::uint8_t img[16];
        perm_unrank((std::uint32_t)start, degree, fact, img);
        {
            std::vector<int> v(degree);
            for (int i = 0; i < degree; ++i) v[i] = img[i];
            reps.push_back(Perm::from_images(v));
        }
        queue.clear();
        queue.push_back((std::uint32_t)start);
        test_and_set((std::uint32_t)start);
        ++seen;
        std::uint8_t t[16], out[16];
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            perm_unrank(queue[qi], degree, fact, t);
            for (const auto& g : lg) {  // g * t
                for (int i = 0; i < degree; ++i) out[i] = g[t[i]];
                std::uint32_t r = perm_rank(out, degree, fact);
                if (!test_and_set(r)) {
                    queue.push_back(r);
                    ++seen;
                }
            }
            for (const auto& g : rg) {  // t * g
                for (int i = 0; i < degree; ++i) out[i] = t[g[i]];
                std::uint32_t r = perm_rank(out, degree, fact);
                if (!test_and_set(r)) {
                    queue.push_back(r);
                    ++seen;
                }
            }
        }
    }
    if (seen != total) throw std::logic_error("double_coset_reps: cosets do not cover the group");
    return reps;
}

}  // namespace sdcode
