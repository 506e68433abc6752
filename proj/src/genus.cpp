#include "genus.hpp"

#include "jsonio.hpp"
#include "lll.hpp"
#include "neighbor.hpp"
#include "shortvec.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

namespace enrlat {

const PreparedLattice& GenusClassData::prep() const {
    auto* self = const_cast<GenusClassData*>(this);
    if (!self->prepared) self->prepared = std::make_shared<PreparedLattice>(gram);
    return *self->prepared;
}

Lattice genus_seed(int d) {
    require(d >= 1, ErrCode::invalid_argument, "genus needs d >= 1");
    return direct_sum(make_rank1(Int(-2 * d)), make_E8(-1));
}

const std::vector<std::vector<int>>& reference_halfcounts() {
    static const std::vector<std::vector<int>> table = {
        /* d=1 */ {121},
        /* d=2 */ {120, 72},
        /* d=3 */ {120, 66},
        /* d=4 */ {120, 56},
        /* d=5 */ {120, 64, 45},
        /* d=6 */ {120, 56, 42},
        /* d=7 */ {120, 64, 43},
        /* d=8 */ {120, 64, 56, 36},
        /* d=9 */ {120, 64, 39, 37},
        /* d=10 */ {120, 56, 42, 30},
        /* d=11 */ {120, 64, 63, 36, 33},
        /* d=12 */ {120, 56, 39, 29},
        /* d=13 */ {120, 64, 42, 38, 29},
        /* d=14 */ {120, 63, 56, 43, 36, 26},
        /* d=15 */ {120, 64, 39, 31, 25},
        /* d=16 */ {120, 64, 56, 42, 28, 26},
        /* d=17 */ {120, 64, 63, 43, 37, 36, 29, 24},
        /* d=18 */ {120, 56, 42, 39, 26, 23},
        /* d=19 */ {120, 64, 63, 42, 31, 28, 24},
        /* d=20 */ {120, 63, 56, 36, 31, 28, 20},
        /* d=21 */ {120, 64, 39, 37, 29, 25, 23},
    };
    return table;
}

std::vector<Int> halfcounts(const GenusEnumeration& g) {
    std::vector<Int> out;
    for (const auto& c : g.classes) out.push_back(c.root_halfcount);
    return out;
}

std::string genus_table_row(const GenusEnumeration& g) {
    std::string row = std::to_string(g.d) + ": [";
    for (size_t i = 0; i < g.classes.size(); ++i) {
        if (i) row += ", ";
        row += g.classes[i].root_halfcount.str();
    }
    row += "]";
    return row;
}

namespace {

std::vector<Int> theta_of(const IMat& gram) {
    ShortVectorEngine eng(gram);
    return eng.theta_prefix(Int(8));
}

GenusClassData make_class(const IMat& reduced, std::shared_ptr<PreparedLattice> prep,
                          int64_t prime, int parent) {
    GenusClassData c;
    c.gram = reduced;
    c.prepared = prep ? std::move(prep) : std::make_shared<PreparedLattice>(reduced);
    c.theta = theta_of(reduced);
    c.root_halfcount = c.theta[0] / 2;
    c.aut_order = aut_group(*c.prepared).order;
    c.found_prime = prime;
    c.parent_index = parent;
    return c;
}

// Canonical class order: descending root half-count, then descending theta
// prefix, ascending automorphism order, then Gram bytes. All keys are
// intrinsic except the final Gram tie-break, and insertion is deterministic.
bool class_less(const GenusClassData& a, const GenusClassData& b) {
    if (a.root_halfcount != b.root_halfcount) return a.root_halfcount > b.root_halfcount;
    if (a.theta != b.theta) return a.theta > b.theta;
    if (a.aut_order != b.aut_order) return a.aut_order < b.aut_order;
    return a.gram.compare(b.gram) < 0;
}

void check_class_invariants(const GenusClassData& c, int d, const FiniteQuadraticForm& seed_form,
                            const char* context) {
    Lattice l(c.gram);
    require(l.rank() == 9, ErrCode::invariant, std::string(context) + ": class rank != 9");
    require(l.is_even(), ErrCode::invariant, std::string(context) + ": class not even");
    require(l.det() == Int(-2 * d), ErrCode::invariant,
            std::string(context) + ": class determinant != -2d");
    require(l.is_negative_definite(), ErrCode::invariant,
            std::string(context) + ": class not negative definite");
    FiniteQuadraticForm f = FiniteQuadraticForm::from_lattice(l);
    require(same_disc_form(f, seed_form), ErrCode::invariant,
            std::string(context) + ": discriminant form differs from the seed");
}

void check_reference_table(GenusEnumeration& g) {
    const auto& table = reference_halfcounts();
    if (g.d < 1 || g.d > int(table.size())) {
        g.mass_certified = false;  // closure-certified only
        return;
    }
    const std::vector<int>& expect = table[g.d - 1];
    std::vector<Int> got = halfcounts(g);
    bool ok = got.size() == expect.size();
    if (ok) {
        std::vector<Int> a = got, b;
        for (int x : expect) b.push_back(Int(x));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        ok = a == b;
    }
    require(ok, ErrCode::invariant,
            "genus class multiset for d=" + std::to_string(g.d) +
                " does not match the verified reference table");
    g.mass_certified = true;
}

GenusEnumeration enumerate_fresh(int d, const GenusOptions& opts) {
    require(!opts.primes.empty(), ErrCode::invalid_argument, "need at least one prime");
    auto t0 = std::chrono::steady_clock::now();
    auto over_budget = [&]() {
        if (opts.budget_secs <= 0) return false;
        std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
        return el.count() > opts.budget_secs;
    };

    Lattice seed = genus_seed(d);
    FiniteQuadraticForm seed_form = FiniteQuadraticForm::from_lattice(seed);
    IMat seed_red = lll_reduce_definite(seed.gram());

    GenusEnumeration g;
    g.d = d;
    g.primes = opts.primes;

    g.classes.push_back(make_class(seed_red, nullptr, 0, -1));
    check_class_invariants(g.classes[0], d, seed_form, "seed");

    // Gram bytes -> class index, memoizes isometry decisions. Every distinct
    // Gram is certified to stay in the genus: either a verified isometry
    // witness maps it onto an already-checked class (same discriminant form),
    // or it becomes a new class and passes the full discriminant check in
    // check_class_invariants. Determinant and evenness are asserted inside
    // every kneser_neighbor call.
    std::map<IMat, int, decltype([](const IMat& a, const IMat& b) { return a.compare(b) < 0; })>
        seen;
    seen.emplace(g.classes[0].gram, 0);

    for (size_t idx = 0; idx < g.classes.size(); ++idx) {
        for (int64_t p : opts.primes) {
            require(!over_budget(), ErrCode::budget,
                    "genus enumeration budget exceeded at d=" + std::to_string(d));
            // Collect the distinct unresolved Grams of this scan, then insert
            // in canonical order so the stored set is independent of scan
            // order (and therefore of the seed).
            IMat base = g.classes[idx].gram;
            std::vector<std::pair<IMat, Int>> batch;  // reduced gram, half-count
            scan_neighbors(base, p, opts.seed, [&](const IMat& ngram, const std::vector<Int>&) {
                ++g.edges;
                IMat reduced = lll_reduce_definite(ngram);
                auto it = seen.find(reduced);
                if (it != seen.end()) return;
                Int hc = root_halfcount(reduced);
                int found = -1;
                for (size_t ci = 0; ci < g.classes.size(); ++ci) {
                    if (g.classes[ci].root_halfcount != hc) continue;
                    if (find_isometry_light(reduced, g.classes[ci].prep())) {
                        found = int(ci);
                        break;
                    }
                }
                ++g.edge_disc_checks;
                seen.emplace(reduced, found);
                if (found < 0) batch.emplace_back(std::move(reduced), std::move(hc));
            });
            if (batch.empty()) continue;
            std::sort(batch.begin(), batch.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first.compare(b.first) < 0;
            });
            for (const auto& [cand, hc] : batch) {
                auto cand_prep = std::make_shared<PreparedLattice>(cand);
                int found = -1;
                for (size_t ci = 0; ci < g.classes.size(); ++ci) {
                    if (g.classes[ci].root_halfcount != hc) continue;
                    if (find_isometry(*cand_prep, g.classes[ci].prep())) {
                        found = int(ci);
                        break;
                    }
                }
                if (found < 0) {
                    GenusClassData c = make_class(cand, cand_prep, p, int(idx));
                    check_class_invariants(c, d, seed_form, "neighbor class");
                    g.classes.push_back(std::move(c));
                    found = int(g.classes.size()) - 1;
                }
                seen[cand] = found;
            }
        }
    }
    g.closed = true;

    std::sort(g.classes.begin(), g.classes.end(), class_less);
    g.empirical_mass = 0;
    for (const auto& c : g.classes) g.empirical_mass += Rat(1) / Rat(c.aut_order);
    check_reference_table(g);
    return g;
}

}  // namespace

GenusEnumeration enumerate_genus(int d, const GenusOptions& opts) {
    if (!opts.cache_dir.empty()) {
        CacheLoad cached = load_genus_cache(d, opts);
        require(cached.violation.empty(), ErrCode::invariant,
                "genus cache for d=" + std::to_string(d) + " failed replay: " + cached.violation);
        if (cached.data) return std::move(*cached.data);
    }
    if (opts.progress) std::fprintf(stderr, "enumerating genus d=%d ...\n", d);
    GenusEnumeration g = enumerate_fresh(d, opts);
    if (opts.progress)
        std::fprintf(stderr, "genus d=%d: %zu classes, %lld edges\n", d, g.classes.size(),
                     static_cast<long long>(g.edges));
    if (!opts.cache_dir.empty()) save_genus_cache(g, opts.cache_dir);
    return g;
}

std::string genus_cache_path(const std::string& cache_dir, int d) {
    return (std::filesystem::path(cache_dir) / ("genus_d" + std::to_string(d) + ".json")).string();
}

void save_genus_cache(const GenusEnumeration& g, const std::string& cache_dir) {
    std::filesystem::create_directories(cache_dir);
    std::string path = genus_cache_path(cache_dir, g.d);
    std::ofstream out(path);
    require(bool(out), ErrCode::io, "cannot write cache file " + path);
    out << genus_to_json(g).dump(1) << "\n";
}

CacheLoad load_genus_cache(int d, const GenusOptions& opts) {
    CacheLoad res;
    std::string path = genus_cache_path(opts.cache_dir, d);
    std::ifstream in(path);
    if (!in) {
        res.stale = true;
        return res;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (...) {
        res.stale = true;
        return res;
    }
    GenusEnumeration g;
    if (!genus_from_json(j, g) || g.d != d) {
        res.stale = true;  // old schema or wrong file: recompute
        return res;
    }
    // Replay invariants before trusting cached data.
    try {
        Lattice seed = genus_seed(d);
        FiniteQuadraticForm seed_form = FiniteQuadraticForm::from_lattice(seed);
        require(g.closed, ErrCode::invariant, "cache not closed");
        require(!g.classes.empty(), ErrCode::invariant, "cache has no classes");
        for (size_t i = 0; i < g.classes.size(); ++i) {
            GenusClassData& c = g.classes[i];
            check_class_invariants(c, d, seed_form, "cached class");
            std::vector<Int> theta = theta_of(c.gram);
            require(theta == c.theta, ErrCode::invariant, "cached theta prefix mismatch");
            require(theta[0] / 2 == c.root_halfcount, ErrCode::invariant,
                    "cached root half-count mismatch");
            Int aut = aut_group(c.prep()).order;
            require(aut == c.aut_order, ErrCode::invariant, "cached automorphism order mismatch");
        }
        for (size_t i = 0; i + 1 < g.classes.size(); ++i)
            require(class_less(g.classes[i], g.classes[i + 1]), ErrCode::invariant,
                    "cached classes not in canonical order");
        for (size_t i = 0; i < g.classes.size(); ++i)
            for (size_t j = i + 1; j < g.classes.size(); ++j)
                require(!find_isometry(g.classes[i].prep(), g.classes[j].prep()),
                        ErrCode::invariant, "cached classes are isometric");
        Rat mass = 0;
        for (const auto& c : g.classes) mass += Rat(1) / Rat(c.aut_order);
        require(mass == g.empirical_mass, ErrCode::invariant, "cached mass mismatch");
        check_reference_table(g);
    } catch (const Error& e) {
        res.violation = e.what();
        return res;
    }
    g.from_cache = true;
    res.data = std::move(g);
    return res;
}

}  // namespace enrlat
