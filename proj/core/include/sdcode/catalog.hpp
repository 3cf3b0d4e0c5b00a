// Named generator-matrix store: a directory of .gm files described by an
// index manifest carrying a kind, provenance note, content checksum and
// declared parameters per entry. Loads verify the checksum and every declared
// parameter before handing the code out.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sdcode/cyclotomic.hpp"
#include "sdcode/gf2core.hpp"

namespace sdcode {

struct CatalogEntry {
    std::string name;
    std::string kind;        // "binary" or "module"
    std::string provenance;
    std::string file;        // path relative to the catalog root
    std::string checksum;    // fnv1a-64 of the file bytes, 16 hex digits
    std::map<std::string, std::string> params;

    int param_int(const std::string& key, int fallback = -1) const;
    bool param_flag(const std::string& key) const;
};

class Catalog {
public:
    explicit Catalog(const std::string& root_dir);

    // SDCODE_CATALOG_DIR when set, else the build-time default directory.
    static std::string default_dir();
    static Catalog open_default();

    const std::string& root() const { return root_; }
    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(const std::string& name) const;

    // Verify checksum and declared parameters, then return the code.
    BinaryCode load_binary(const std::string& name) const;
    ModuleCode load_module(const std::string& name) const;

private:
    std::string root_;
    std::vector<CatalogEntry> entries_;
};

// "catalog:NAME" resolves through the default catalog; anything else is a
// file path (with module loads needing "p=..,c=.." from the caller).
bool is_catalog_uri(const std::string& uri);
BinaryCode resolve_binary(const std::string& uri);
ModuleCode resolve_module(const std::string& uri, int p = 0);

// Minimal manifest reader shared by the catalog and dataset importers:
// [[entry]] / [section] headers with key = "string" | integer | true/false
// lines and '#' comments.
struct ManifestSection {
    std::string header;
    std::map<std::string, std::string> values;
};
std::vector<ManifestSection> read_manifest(const std::string& path);

// Validated external-dataset import. The directory holds a manifest.toml
// describing the expected family plus one .gm file per member; every member
// is checked against the declared parameters, and when the family is marked
// complete the members must also be pairwise inequivalent.
struct DatasetExpectation {
    int n = 0;
    int k = 0;
    int min_weight = 0;        // 0 = unchecked
    bool self_orthogonal = false;
    bool self_dual = false;
    int count = 0;             // 0 = unchecked
    bool complete = false;     // enforce pairwise inequivalence
};

struct ImportedDataset {
    std::vector<std::string> names;
    std::vector<BinaryCode> codes;
    std::string checksum;      // combined digest over member files, order-independent
};

DatasetExpectation dataset_expectation_from_manifest(const std::string& dir);
ImportedDataset import_dataset(const std::string& dir, const DatasetExpectation& expected);

// Writes the complete dataset of the three self-orthogonal [23,10,8] codes
// into dir (three .gm members plus a manifest), derived from scratch as the
// three hyperplane-subcode classes of the even-weight subcode of the
// [23,12,7] quadratic-residue code, and returns the validated re-import.
ImportedDataset materialize_so_23_10_8(const std::string& dir);

}  // namespace sdcode
