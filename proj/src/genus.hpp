#pragma once

#include "fqf.hpp"
#include "isometry.hpp"
#include "lattice.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace enrlat {

struct GenusOptions {
    std::vector<int64_t> primes = {2, 3};
    uint64_t seed = 0;        // shuffles scan order only; results are identical
    double budget_secs = 0;   // 0 = no limit
    bool progress = false;    // one line per fresh enumeration on stderr
    std::string cache_dir;    // empty = no cache
};

struct GenusClassData {
    IMat gram;             // LLL-reduced representative, negative definite
    Int aut_order;
    Int root_halfcount;
    std::vector<Int> theta;  // full vector counts at |norm| = 2, 4, 6, 8
    int64_t found_prime = 0;
    int parent_index = -1;
    std::shared_ptr<PreparedLattice> prepared;  // built on demand

    const PreparedLattice& prep() const;
};

struct GenusEnumeration {
    int d = 0;
    std::vector<GenusClassData> classes;  // canonical order (see sort in genus.cpp)
    std::vector<int64_t> primes;
    bool closed = false;
    bool mass_certified = false;  // true when the d <= 21 reference multiset matched
    Rat empirical_mass;
    int64_t edges = 0;             // neighbor constructions performed
    int64_t edge_disc_checks = 0;  // distinct Grams certified to stay in the genus
    bool from_cache = false;
};

// Seed lattice of the genus: <-2d> + E8(-1).
Lattice genus_seed(int d);

// Kneser traversal over the given primes starting from the seed, closed when
// a full scan of every class at every prime adds nothing. Classes carry
// automorphism order and root half-count; for d <= 21 the root half-count
// multiset is checked against the verified reference table and a mismatch is
// a hard error. Uses the JSON cache when opts.cache_dir is set.
GenusEnumeration enumerate_genus(int d, const GenusOptions& opts = {});

// Reference root-half-count multisets for d = 1..21 (verified data).
const std::vector<std::vector<int>>& reference_halfcounts();

std::vector<Int> halfcounts(const GenusEnumeration& g);

// "d: [n1, n2, ..., nk]"
std::string genus_table_row(const GenusEnumeration& g);

// Cache round trip; load replays all invariants and reports the first
// violation instead of returning data.
std::string genus_cache_path(const std::string& cache_dir, int d);
void save_genus_cache(const GenusEnumeration& g, const std::string& cache_dir);
struct CacheLoad {
    std::optional<GenusEnumeration> data;
    bool stale = false;            // unreadable/old schema: recompute silently
    std::string violation;         // nonempty = replayed invariant failed
};
CacheLoad load_genus_cache(int d, const GenusOptions& opts);

}  // namespace enrlat
