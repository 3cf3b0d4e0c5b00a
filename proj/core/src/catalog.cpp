#include "sdcode/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sdcode/equiv.hpp"

#ifndef SDCODE_DEFAULT_CATALOG_DIR
#define SDCODE_DEFAULT_CATALOG_DIR "catalog"
#endif

namespace sdcode {

namespace {

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void check_declared_binary(const CatalogEntry& ent, const BinaryCode& code) {
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("catalog entry " + ent.name + ": " + what);
    };
    int n = ent.param_int("n");
    if (n >= 0 && n != code.n()) fail("declared n does not match");
    int k = ent.param_int("k");
    if (k >= 0 && k != code.k()) fail("declared k does not match");
    if (ent.param_flag("self_dual") && !code.is_self_dual()) fail("not self-dual");
    if (ent.param_flag("self_orthogonal") && !code.is_self_orthogonal()) fail("not self-orthogonal");
    int d = ent.param_int("min_weight");
    if (d >= 0) {
        auto mw = min_weight(code);
        if (!mw || mw->weight != d) fail("declared minimum weight does not match");
    }
}

}  // namespace

int CatalogEntry::param_int(const std::string& key, int fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return std::stoi(it->second);
}

bool CatalogEntry::param_flag(const std::string& key) const {
    auto it = params.find(key);
    return it != params.end() && it->second == "true";
}

std::vector<ManifestSection> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<ManifestSection> sections;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto bad = [&](const std::string& what) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
        };
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t[0] == '[') {
            std::string h = t;
            while (!h.empty() && (h.front() == '[')) h.erase(h.begin());
            while (!h.empty() && (h.back() == ']')) h.pop_back();
            sections.push_back({trim(h), {}});
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) bad("expected key = value");
        if (sections.empty()) bad("key outside a section");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) bad("empty key");
        if (val.size() >= 2 && val.front() == '"') {
            if (val.back() != '"') bad("unterminated string");
            val = val.substr(1, val.size() - 2);
        } else {
            auto hash = val.find('#');
            if (hash != std::string::npos) val = trim(val.substr(0, hash));
            if (val != "true" && val != "false" &&
                val.find_first_not_of("0123456789-") != std::string::npos)
                bad("value must be a string, integer or boolean");
        }
        sections.back().values[key] = val;
    }
    return sections;
}

Catalog::Catalog(const std::string& root_dir) : root_(root_dir) {
    std::string index = root_ + "/index.toml";
    for (const auto& sec : read_manifest(index)) {
        if (sec.header != "entry") continue;
        CatalogEntry ent;
        for (const auto& [key, val] : sec.values) {
            if (key == "name")
                ent.name = val;
            else if (key == "kind")
                ent.kind = val;
            else if (key == "provenance")
                ent.provenance = val;
            else if (key == "file")
                ent.file = val;
            else if (key == "checksum")
                ent.checksum = val;
            else
                ent.params[key] = val;
        }
        if (ent.name.empty() || ent.kind.empty() || ent.file.empty() || ent.checksum.empty())
            throw std::runtime_error(index + ": entry needs name, kind, file and checksum");
        if (find(ent.name)) throw std::runtime_error(index + ": duplicate entry " + ent.name);
        entries_.push_back(std::move(ent));
    }
}

std::string Catalog::default_dir() {
    if (const char* env = std::getenv("SDCODE_CATALOG_DIR")) return env;
    return SDCODE_DEFAULT_CATALOG_DIR;
}

Catalog Catalog::open_default() { return Catalog(default_dir()); }

const CatalogEntry* Catalog::find(const std::string& name) const {
    for (const auto& ent : entries_) {
        if (ent.name == name) return &ent;
    }
    return nullptr;
}

BinaryCode Catalog::load_binary(const std::string& name) const {
    const CatalogEntry* ent = find(name);
    if (!ent) throw std::runtime_error("catalog: no entry named " + name);
    if (ent->kind != "binary")
        throw std::runtime_error("catalog entry " + name + " is not a binary code");
    std::string bytes = read_file_bytes(root_ + "/" + ent->file);
    if (hex64(fnv1a64(bytes)) != ent->checksum)
        throw std::runtime_error("catalog entry " + name + ": checksum mismatch");
    std::istringstream in(bytes);
    BinaryCode code = read_gm_text(in, ent->file);
    check_declared_binary(*ent, code);
    return code;
}

ModuleCode Catalog::load_module(const std::string& name) const {
    const CatalogEntry* ent = find(name);
    if (!ent) throw std::runtime_error("catalog: no entry named " + name);
    if (ent->kind != "module")
        throw std::runtime_error("catalog entry " + name + " is not a module code");
    std::string bytes = read_file_bytes(root_ + "/" + ent->file);
    if (hex64(fnv1a64(bytes)) != ent->checksum)
        throw std::runtime_error("catalog entry " + name + ": checksum mismatch");
    int p = ent->param_int("p");
    if (p < 3) throw std::runtime_error("catalog entry " + name + ": module needs p");
    std::istringstream in(bytes);
    BinaryCode image = read_gm_text(in, ent->file);
    ModuleCode m = module_from_binary(image, p);
    if (!m.is_module_closed())
        throw std::runtime_error("catalog entry " + name + ": image is not x-closed");
    int c = ent->param_int("cycles");
    if (c >= 0 && c != m.c)
        throw std::runtime_error("catalog entry " + name + ": declared cycle count mismatch");
    int dim = ent->param_int("dim_binary");
    if (dim >= 0 && dim != image.k())
        throw std::runtime_error("catalog entry " + name + ": declared dimension mismatch");
    return m;
}

bool is_catalog_uri(const std::string& uri) { return uri.rfind("catalog:", 0) == 0; }

BinaryCode resolve_binary(const std::string& uri) {
    if (is_catalog_uri(uri)) return Catalog::open_default().load_binary(uri.substr(8));
    return read_gm_file(uri);
}

ModuleCode resolve_module(const std::string& uri, int p) {
    if (is_catalog_uri(uri)) return Catalog::open_default().load_module(uri.substr(8));
    if (p < 3) throw std::runtime_error("module load from a file needs p");
    return module_from_binary(read_gm_file(uri), p);
}

DatasetExpectation dataset_expectation_from_manifest(const std::string& dir) {
    DatasetExpectation e;
    for (const auto& sec : read_manifest(dir + "/manifest.toml")) {
        if (sec.header != "dataset") continue;
        for (const auto& [key, val] : sec.values) {
            if (key == "n")
                e.n = std::stoi(val);
            else if (key == "k")
                e.k = std::stoi(val);
            else if (key == "min_weight")
                e.min_weight = std::stoi(val);
            else if (key == "count")
                e.count = std::stoi(val);
            else if (key == "self_orthogonal")
                e.self_orthogonal = (val == "true");
            else if (key == "self_dual")
                e.self_dual = (val == "true");
            else if (key == "complete")
                e.complete = (val == "true");
        }
        return e;
    }
    throw std::runtime_error(dir + "/manifest.toml: no [dataset] section");
}

ImportedDataset import_dataset(const std::string& dir, const DatasetExpectation& expected) {
    namespace fs = std::filesystem;
    ImportedDataset out;
    std::vector<std::string> files;
    for (const auto& de : fs::directory_iterator(dir)) {
        if (de.path().extension() == ".gm") files.push_back(de.path().string());
    }
    std::sort(files.begin(), files.end());
    std::vector<std::string> digests;
    for (const auto& path : files) {
        std::string bytes = read_file_bytes(path);
        digests.push_back(hex64(fnv1a64(bytes)));
        std::istringstream in(bytes);
        BinaryCode code = read_gm_text(in, path);
        auto fail = [&](const std::string& what) {
            throw std::runtime_error("dataset member " + path + ": " + what);
        };
        if (expected.n && code.n() != expected.n) fail("wrong length");
        if (expected.k && code.k() != expected.k) fail("wrong dimension");
        if (expected.self_dual && !code.is_self_dual()) fail("not self-dual");
        if (expected.self_orthogonal && !code.is_self_orthogonal()) fail("not self-orthogonal");
        if (expected.min_weight) {
            auto mw = min_weight(code);
            if (!mw || mw->weight != expected.min_weight) fail("wrong minimum weight");
        }
        out.names.push_back(fs::path(path).stem().string());
        out.codes.push_back(code);
    }
    if (expected.count && (int)out.codes.size() != expected.count)
        throw std::runtime_error(dir + ": expected " + std::to_string(expected.count) +
                                 " members, found " + std::to_string(out.codes.size()));
    if (out.codes.empty()) throw std::runtime_error(dir + ": no .gm members found");
    if (expected.complete) {
        std::vector<std::string> keys;
        for (const auto& code : out.codes) keys.push_back(canonical_key(code));
        for (std::size_t i = 0; i < keys.size(); ++i) {
            for (std::size_t j = i + 1; j < keys.size(); ++j) {
                if (keys[i] == keys[j])
                    throw std::runtime_error(dir + ": members " + out.names[i] + " and " +
                                             out.names[j] + " are equivalent");
            }
        }
    }
    std::sort(digests.begin(), digests.end());
    std::string joined;
    for (const auto& d : digests) joined += d;
    out.checksum = hex64(fnv1a64(joined));
    return out;
}

namespace {

// Subcode cut out by a linear functional on the row-coefficient space; tag
// bit i weights row i. Assumes tag != 0 and independent rows.
BinaryCode coefficient_kernel_subcode(const BinaryCode& c, std::uint32_t tag) {
    int j = 0;
    while (!(tag >> j & 1)) ++j;
    std::vector<BitVector> rows;
    for (int i = 0; i < c.k(); ++i) {
        if (i == j) continue;
        BitVector v = c.rows()[i];
        if (tag >> i & 1) v = v ^ c.rows()[j];
        rows.push_back(v);
    }
    return BinaryCode::from_rows(c.n(), rows);
}

std::string wd_signature(const WeightDistribution& wd) {
    std::string sig;
    for (int w = 0; w <= wd.n; ++w) {
        if (wd.at(w)) sig += std::to_string(w) + ":" + std::to_string(wd.at(w)) + " ";
    }
    return sig;
}

}  // namespace

ImportedDataset materialize_so_23_10_8(const std::string& dir) {
    // The cyclic shifts of the quadratic-residue indicator vector modulo 23
    // span the [23,12,7] residue code.
    BitVector q(23);
    for (int a = 1; a < 23; ++a) q.set(a * a % 23, true);
    std::vector<BitVector> shifts;
    for (int s = 0; s < 23; ++s) {
        BitVector v(23);
        for (int i = 0; i < 23; ++i) {
            if (q.get(i)) v.set((i + s) % 23, true);
        }
        shifts.push_back(v);
    }
    BinaryCode qr = BinaryCode::from_rows(23, shifts);
    auto mw = min_weight(qr);
    if (qr.k() != 12 || !mw || mw->weight != 7)
        throw std::logic_error("materialize: residue code is not [23,12,7]");

    // Its even-weight subcode (the shortening of the self-dual [24,12,8]
    // parity extension at the new coordinate) is [23,11,8] self-orthogonal.
    std::uint32_t parity = 0;
    for (int i = 0; i < qr.k(); ++i) {
        if (qr.rows()[i].weight() % 2) parity |= 1u << i;
    }
    BinaryCode evens = coefficient_kernel_subcode(qr, parity);
    if (evens.k() != 11 || !evens.is_self_orthogonal())
        throw std::logic_error("materialize: even-weight subcode is not [23,11] self-orthogonal");

    // Every hyperplane of it is a [23,10,8] self-orthogonal code. The 2047 of
    // them fall into exactly three equivalence classes, of sizes 23, 253 and
    // 1771, already separated by weight distribution; keep the first member
    // seen of each class.
    std::map<std::string, std::pair<BinaryCode, int>> buckets;
    for (std::uint32_t tag = 1; tag < (1u << evens.k()); ++tag) {
        BinaryCode h = coefficient_kernel_subcode(evens, tag);
        std::string sig = wd_signature(weight_distribution(h));
        auto it = buckets.find(sig);
        if (it == buckets.end())
            buckets.emplace(sig, std::make_pair(h, 1));
        else
            ++it->second.second;
    }
    if (buckets.size() != 3)
        throw std::logic_error("materialize: expected three weight-distribution classes");
    std::vector<int> sizes;
    std::vector<BinaryCode> members;
    for (const auto& [sig, bc] : buckets) {
        sizes.push_back(bc.second);
        members.push_back(bc.first);
    }
    std::sort(sizes.begin(), sizes.end());
    if (sizes != std::vector<int>{23, 253, 1771})
        throw std::logic_error("materialize: unexpected equivalence-class sizes");
    std::vector<std::string> keys;
    for (const auto& m : members) {
        auto mwm = min_weight(m);
        if (m.k() != 10 || !m.is_self_orthogonal() || !mwm || mwm->weight != 8)
            throw std::logic_error("materialize: member is not [23,10,8] self-orthogonal");
        keys.push_back(canonical_key(m));
    }
    if (keys[0] == keys[1] || keys[0] == keys[2] || keys[1] == keys[2])
        throw std::logic_error("materialize: members not pairwise inequivalent");

    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const char* names[3] = {"so_23_10_8_a", "so_23_10_8_b", "so_23_10_8_c"};
    for (int i = 0; i < 3; ++i)
        write_gm_file(members[i], (fs::path(dir) / (std::string(names[i]) + ".gm")).string(),
                      {"self-orthogonal [23,10,8], derived"});
    std::ofstream man((fs::path(dir) / "manifest.toml").string());
    man << "# The three self-orthogonal [23,10,8] codes: pairwise inequivalent\n"
           "# hyperplane subcodes of the even-weight [23,11,8] subcode of the\n"
           "# [23,12,7] quadratic-residue code, one representative per class,\n"
           "# ordered by weight distribution.\n"
           "\n"
           "[dataset]\n"
           "name = \"so_23_10_8\"\n"
           "n = 23\n"
           "k = 10\n"
           "min_weight = 8\n"
           "self_orthogonal = true\n"
           "count = 3\n"
           "complete = true\n";
    man.close();
    return import_dataset(dir, dataset_expectation_from_manifest(dir));
}

}  // namespace sdcode
