#include "sdcode/gf2core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "sdcode/perm.hpp"

namespace sdcode {

BitVector BitVector::from_string(const std::string& s) {
    BitVector v((int)s.size());
    for (int i = 0; i < (int)s.size(); ++i) {
        if (s[i] == '1') v.set(i, true);
        else if (s[i] != '0') throw std::invalid_argument("BitVector: bad character in row");
    }
    return v;
}

RrefResult rref(std::vector<BitVector> rows, int n) {
    RrefResult r;
    int nrows = (int)rows.size();
    int row = 0;
    for (int col = 0; col < n && row < nrows; ++col) {
        int piv = -1;
        for (int i = row; i < nrows; ++i) {
            if (rows[i].get(col)) { piv = i; break; }
        }
        if (piv < 0) continue;
        std::swap(rows[row], rows[piv]);
        for (int i = 0; i < nrows; ++i) {
            if (i != row && rows[i].get(col)) rows[i] ^= rows[row];
        }
        r.pivots.push_back(col);
        ++row;
    }
    rows.resize(row);
    r.rows = std::move(rows);
    r.rank = row;
    return r;
}

std::vector<BitVector> combination_kernel(const std::vector<BitVector>& rows, int width) {
    (void)width;
    int k = (int)rows.size();
    if (k > kMaxLen) throw std::invalid_argument("combination_kernel: too many rows");
    // (reduced row, tag) pairs kept sorted by pivot; a vanishing residue means
    // the tag is a kernel element.
    std::vector<std::pair<BitVector, BitVector>> basis;
    std::vector<BitVector> tags;
    for (int i = 0; i < k; ++i) {
        BitVector m = rows[i];
        BitVector tag(k);
        tag.set(i, true);
        for (const auto& [bm, bt] : basis) {
            if (m.get(bm.lowest())) {
                m ^= bm;
                tag ^= bt;
            }
        }
        if (m.zero()) {
            tags.push_back(tag);
        } else {
            basis.emplace_back(m, tag);
            std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) {
                return a.first.lowest() < b.first.lowest();
            });
        }
    }
    return tags;
}

BinaryCode BinaryCode::from_rows(int n, const std::vector<BitVector>& rows) {
    if (n < 0 || n > kMaxLen) throw std::invalid_argument("BinaryCode: bad length");
    for (const auto& v : rows) {
        if (v.n != n) throw std::invalid_argument("BinaryCode: row length mismatch");
    }
    BinaryCode c;
    c.n_ = n;
    RrefResult r = rref(rows, n);
    c.rank_deficient_ = r.rank < (int)rows.size();
    c.rows_ = std::move(r.rows);
    c.pivots_ = std::move(r.pivots);
    return c;
}

BinaryCode BinaryCode::from_strings(int n, const std::vector<std::string>& rows) {
    std::vector<BitVector> vs;
    vs.reserve(rows.size());
    for (const auto& s : rows) {
        if ((int)s.size() != n) throw std::invalid_argument("BinaryCode: row length mismatch");
        vs.push_back(BitVector::from_string(s));
    }
    return from_rows(n, vs);
}

bool BinaryCode::contains(const BitVector& v) const {
    if (v.n != n_) return false;
    BitVector x = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (x.get(pivots_[i])) x ^= rows_[i];
    }
    return x.zero();
}

BinaryCode BinaryCode::dual() const {
    // Free columns become unit directions; pivot coordinates are filled from
    // the RREF rows so that every dual row is orthogonal to all of them.
    std::vector<bool> is_pivot(n_, false);
    for (int p : pivots_) is_pivot[p] = true;
    std::vector<BitVector> drows;
    drows.reserve(n_ - k());
    for (int f = 0; f < n_; ++f) {
        if (is_pivot[f]) continue;
        BitVector v(n_);
        v.set(f, true);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (rows_[r].get(f)) v.set(pivots_[r], true);
        }
        drows.push_back(v);
    }
    return from_rows(n_, drows);
}

BinaryCode BinaryCode::permuted(const Perm& p) const {
    if (p.degree() != n_) throw std::invalid_argument("permuted: degree mismatch");
    std::vector<BitVector> rs;
    rs.reserve(rows_.size());
    for (const auto& row : rows_) {
        BitVector v(n_);
        for (int i = 0; i < n_; ++i) {
            if (row.get(i)) v.set(p[i], true);
        }
        rs.push_back(v);
    }
    return from_rows(n_, rs);
}

bool BinaryCode::is_self_orthogonal() const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t j = i; j < rows_.size(); ++j) {
            if (rows_[i].dot(rows_[j])) return false;
        }
    }
    return true;
}

std::string BinaryCode::to_text() const {
    std::ostringstream os;
    os << n_ << ' ' << k() << '\n';
    for (const auto& r : rows_) os << r.to_string() << '\n';
    return os.str();
}

namespace {

// Sweep all 2^k codewords in Gray order, calling fn(word0, word1) per nonzero
// codeword. Specialized single-word path for n <= 64.
template <typename Fn>
void gray_sweep(const std::vector<BitVector>& rows, int n, Fn&& fn) {
    int k = (int)rows.size();
    std::uint64_t total = std::uint64_t(1) << k;
    if (n <= 64) {
        std::vector<std::uint64_t> r0(k);
        for (int i = 0; i < k; ++i) r0[i] = rows[i].w[0];
        std::uint64_t w = 0;
        for (std::uint64_t g = 1; g < total; ++g) {
            w ^= r0[__builtin_ctzll(g)];
            fn(w, std::uint64_t(0));
        }
    } else {
        std::uint64_t w0 = 0, w1 = 0;
        for (std::uint64_t g = 1; g < total; ++g) {
            int j = __builtin_ctzll(g);
            w0 ^= rows[j].w[0];
            w1 ^= rows[j].w[1];
            fn(w0, w1);
        }
    }
}

}  // namespace

WeightDistribution weight_distribution(const BinaryCode& c, int max_dim) {
    if (c.k() > max_dim) throw std::invalid_argument("weight_distribution: dimension too large");
    WeightDistribution wd;
    wd.n = c.n();
    wd.counts.assign(c.n() + 1, 0);
    wd.counts[0] = 1;
    gray_sweep(c.rows(), c.n(), [&](std::uint64_t a, std::uint64_t b) {
        wd.counts[__builtin_popcountll(a) + __builtin_popcountll(b)]++;
    });
    return wd;
}

std::vector<BitVector> codewords_of_weights(const BinaryCode& c, const std::vector<int>& weights,
                                            int max_dim) {
    if (c.k() > max_dim) throw std::invalid_argument("codewords_of_weights: dimension too large");
    std::vector<bool> want(c.n() + 1, false);
    for (int w : weights) {
        if (w >= 0 && w <= c.n()) want[w] = true;
    }
    std::vector<BitVector> out;
    if (want[0]) out.emplace_back(c.n());  // gray_sweep skips the zero combination
    gray_sweep(c.rows(), c.n(), [&](std::uint64_t a, std::uint64_t b) {
        int w = __builtin_popcountll(a) + __builtin_popcountll(b);
        if (want[w]) {
            BitVector v(c.n());
            v.w[0] = a;
            v.w[1] = b;
            out.push_back(v);
        }
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<MinWeightResult> min_weight(const BinaryCode& c, int early_exit_below, int max_dim) {
    if (c.k() == 0) return std::nullopt;
    if (c.k() > max_dim) throw std::invalid_argument("min_weight: dimension too large");
    int best = c.n() + 1;
    std::uint64_t best0 = 0, best1 = 0;
    bool stop = false;
    // Manual sweep to allow early exit.
    int k = c.k();
    std::uint64_t total = std::uint64_t(1) << k;
    if (c.n() <= 64) {
        std::vector<std::uint64_t> r0(k);
        for (int i = 0; i < k; ++i) r0[i] = c.rows()[i].w[0];
        std::uint64_t w = 0;
        for (std::uint64_t g = 1; g < total && !stop; ++g) {
            w ^= r0[__builtin_ctzll(g)];
            int wt = __builtin_popcountll(w);
            if (wt < best) {
                best = wt; best0 = w; best1 = 0;
                if (early_exit_below > 0 && best < early_exit_below) stop = true;
            }
        }
    } else {
        std::uint64_t w0 = 0, w1 = 0;
        for (std::uint64_t g = 1; g < total && !stop; ++g) {
            int j = __builtin_ctzll(g);
            w0 ^= c.rows()[j].w[0];
            w1 ^= c.rows()[j].w[1];
            int wt = __builtin_popcountll(w0) + __builtin_popcountll(w1);
            if (wt < best) {
                best = wt; best0 = w0; best1 = w1;
                if (early_exit_below > 0 && best < early_exit_below) stop = true;
            }
        }
    }
    MinWeightResult r;
    r.weight = best;
    r.witness = BitVector(c.n());
    r.witness.w[0] = best0;
    r.witness.w[1] = best1;
    return r;
}

int extremal_bound(int n) {
    if (n <= 0 || n % 2 != 0) throw std::invalid_argument("extremal_bound: length must be even positive");
    if (n % 24 == 22) return 4 * (n / 24) + 6;
    return 4 * (n / 24) + 4;
}

BinaryCode read_gm_text(std::istream& in, const std::string& what) {
    std::vector<std::string> rows;
    int n = -1, k = -1;
    std::string line;
    bool first_content = true;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (first_content) {
            first_content = false;
            // optional "n k" header
            if (line.find_first_not_of("0123456789 \t") == std::string::npos &&
                line.find(' ') != std::string::npos) {
                std::istringstream hs(line);
                if (hs >> n >> k) continue;
            }
        }
        // row line: strip internal spaces to tolerate column grouping
        std::string row;
        for (char ch : line) {
            if (ch == '0' || ch == '1') row.push_back(ch);
            else if (ch != ' ' && ch != '\t')
                throw std::invalid_argument(what + ": bad character '" + std::string(1, ch) + "'");
        }
        if (!row.empty()) rows.push_back(row);
    }
    if (rows.empty()) throw std::invalid_argument(what + ": no rows");
    std::size_t len = rows[0].size();
    for (const auto& r : rows) {
        if (r.size() != len) throw std::invalid_argument(what + ": ragged rows");
    }
    if (n >= 0 && (int)len != n)
        throw std::invalid_argument(what + ": header length disagrees with rows");
    if (k >= 0 && (int)rows.size() != k)
        throw std::invalid_argument(what + ": header row count disagrees with rows");
    return BinaryCode::from_strings((int)len, rows);
}

BinaryCode read_gm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_gm_text(in, path);
}

void write_gm_file(const BinaryCode& c, const std::string& path,
                   const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& cm : comments) out << "# " << cm << '\n';
    out << c.to_text();
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const unsigned char* p = (const unsigned char*)data;
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

std::string hex64(std::uint64_t v) {
    static const char* d = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = d[v & 0xf];
        v >>= 4;
    }
    return s;
}

}  // namespace sdcode
