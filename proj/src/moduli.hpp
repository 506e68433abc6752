#pragma once

#include "f2grp.hpp"
#include "genus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace enrlat {

// Largest R such that a form of weight (dim - weight_low)*k*[O:Gamma] can
// vanish to order k*R*[O:Gamma]/orbit_count on a weight_high reflective
// divisor: floor((dim - weight_low) * orbit_count / weight_high).
Int bound_max_R(Int dim, Int weight_low, Int weight_high, Int orbit_count);

enum class Verdict { NegativeKodaira, Inconclusive };
const char* verdict_name(Verdict v);

// The classifier threshold: bound_max_R(10, 4, 124, 496) + 1, recomputed
// (not hard-coded) and checked once to equal 25.
Int kodaira_threshold();
Verdict kodaira_verdict(const Int& r);

// Number of {+-u} root classes modulo 2L of an even negative definite
// lattice: distinct root coordinate patterns mod 2.
Int reflection_classes(const IMat& neg_def_gram);

// Subgroup of O(D_N) generated by the transvections induced by the root
// reflections of h-perp, transported through a hyperbolic extension and the
// fixed M-side glue. A lower bound for the image of O(M, h).
struct GammaImage {
    std::vector<F2Mat> gens;  // in D_N SNF coordinates
    Int order = 1;
    std::string label;
};
GammaImage gamma_image_lower(const Lattice& hperp, const Int& d);

struct PolarizationClassData {
    int d = 0;
    GenusClassData genus_class;
    Int reflection_count;  // R
    Verdict verdict = Verdict::Inconclusive;
    Int gamma_image_lower_order;
};

struct DegreeReport {
    int degree = 0;  // h^2 = 2d
    std::vector<PolarizationClassData> classes;
    bool all_negative = false;
    int inconclusive_count = 0;
};

DegreeReport classify_degree(int degree, const GenusOptions& opts = {});

// Markdown row mirroring the bracket notation, inconclusive entries bolded.
std::string degree_report_md_row(const DegreeReport& r);

// First genus class (by d, then canonical class order) whose automorphism
// group is {+-1}; none is a valid outcome on small ranges.
std::optional<std::pair<int, GenusClassData>> find_trivial_aut_class(int d_lo, int d_hi,
                                                                     const GenusOptions& opts = {});

// Genus table artifact over a d-range. Formats: "md" (one "d: [n1, ...]"
// row per degree), "csv" (header d,class_index,half_roots,aut_order,verdict),
// "json". Output depends only on the mathematical content, never on seeds.
std::string emit_table(int d_min, int d_max, const std::string& format, const GenusOptions& opts);

// |O+(F_2^10)| = 2^21 * 3^5 * 5^2 * 7 * 17 * 31.
const Int& full_disc_group_order();

}  // namespace enrlat
