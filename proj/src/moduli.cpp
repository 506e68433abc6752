#include "moduli.hpp"

#include "embed.hpp"
#include "shortvec.hpp"

#include <json.hpp>

#include <mutex>
#include <set>

namespace enrlat {

Int bound_max_R(Int dim, Int weight_low, Int weight_high, Int orbit_count) {
    require(dim > 0 && weight_low > 0 && weight_high > 0 && orbit_count > 0,
            ErrCode::invalid_argument, "bound_max_R needs positive inputs");
    require(weight_low < dim, ErrCode::invalid_argument, "weight_low must be below dim");
    return (dim - weight_low) * orbit_count / weight_high;
}

const char* verdict_name(Verdict v) {
    return v == Verdict::NegativeKodaira ? "NegativeKodaira" : "Inconclusive";
}

Int kodaira_threshold() {
    static Int threshold = [] {
        Int t = bound_max_R(10, 4, 124, 496) + 1;
        require(t == 25, ErrCode::invariant, "weight-bound arithmetic drifted from 25");
        return t;
    }();
    return threshold;
}

Verdict kodaira_verdict(const Int& r) {
    require(r >= 0, ErrCode::invalid_argument, "negative reflection count");
    return r >= kodaira_threshold() ? Verdict::NegativeKodaira : Verdict::Inconclusive;
}

Int reflection_classes(const IMat& neg_def_gram) {
    ShortVectorEngine eng(neg_def_gram);
    require(!eng.positive(), ErrCode::invalid_argument,
            "reflection classes need a negative definite lattice");
    std::set<std::vector<Int>> classes;
    eng.scan_half(Int(2), [&](const std::vector<Int>& v, const Int& q) {
        if (q != 2) return;
        std::vector<Int> mod2(v.size());
        for (size_t i = 0; i < v.size(); ++i) mod2[i] = mod_pos(v[i], Int(2));
        classes.insert(std::move(mod2));
    });
    return Int(classes.size());
}

const Int& full_disc_group_order() {
    static const Int order = [] {
        Int o = Int(1) << 21;
        o *= 243;  // 3^5
        o *= 25;   // 5^2
        o *= 7 * 17 * 31;
        return o;
    }();
    return order;
}

namespace {

struct DiscModels {
    F2QuadSpace qm;
    F2QuadSpace qn;
    F2Mat glue;  // D_M -> D_N
};

const DiscModels& disc_models() {
    static DiscModels* models = [] {
        auto* m = new DiscModels;
        m->qm = F2QuadSpace::from_fqf(FiniteQuadraticForm::from_lattice(make_M()));
        m->qn = F2QuadSpace::from_fqf(FiniteQuadraticForm::from_lattice(make_N()));
        const IMat& phi = natural_glue_iso_dm_dn();
        m->glue = F2Mat(10);
        for (int i = 0; i < 10; ++i) {
            uint32_t row = 0;
            for (int j = 0; j < 10; ++j)
                if (phi.at(i, j) != 0) row |= 1u << j;
            m->glue.rows[i] = row;
        }
        // Glue carries q_M to q_N (values are integral, so the dual
        // anti-isometry is an isometry mod 2).
        for (uint32_t v = 0; v < 1024; ++v)
            require(m->qn.q(m->glue.apply(v)) == m->qm.q(v), ErrCode::internal,
                    "glue map is not an isometry of the F2 forms");
        return m;
    }();
    return *models;
}

// Quadratic space Lambda/2Lambda, q = x^2/2 mod 2, of an even unimodular
// overlattice.
F2QuadSpace mod2_space(const Lattice& over) {
    int k = over.rank();
    require(k <= 12, ErrCode::budget, "mod-2 space too large");
    F2QuadSpace s;
    s.k = k;
    s.bmat.assign(k, 0);
    std::vector<uint8_t> qdiag(k);
    for (int i = 0; i < k; ++i) {
        qdiag[i] = uint8_t(to_i64(mod_pos(over.gram().at(i, i) / 2, Int(2))));
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            if (mod_pos(over.gram().at(i, j), Int(2)) != 0) s.bmat[i] |= 1u << j;
        }
    }
    s.qtab.assign(size_t(1) << k, 0);
    for (uint32_t v = 1; v < (1u << k); ++v) {
        int i = __builtin_ctz(v);
        uint32_t w = v & (v - 1);
        s.qtab[v] = uint8_t((s.qtab[w] + qdiag[i] + __builtin_parity(s.bmat[i] & w)) & 1);
    }
    return s;
}

}  // namespace

GammaImage gamma_image_lower(const Lattice& hperp, const Int& d) {
    require(hperp.rank() == 9 && hperp.is_negative_definite() && hperp.is_even(),
            ErrCode::invalid_argument, "expected an even negative definite lattice of rank 9");
    HyperbolicExtension ext = hyperbolic_extension(hperp, d);
    F2QuadSpace qprime = mod2_space(ext.over);

    const DiscModels& models = disc_models();
    F2Mat to_m = witt_isometry(qprime, models.qm);
    F2Mat to_n = to_m * models.glue;

    // Root classes of h-perp, reduced mod 2 in overlattice coordinates.
    ShortVectorEngine eng(hperp.gram());
    std::set<uint32_t> root_classes;
    eng.scan_half(Int(2), [&](const std::vector<Int>& v, const Int& q) {
        if (q != 2) return;
        std::vector<Int> over_coords = mul_row(v, ext.sub_basis);
        uint32_t c = 0;
        for (int j = 0; j < 10; ++j)
            if (mod_pos(over_coords[j], Int(2)) != 0) c |= 1u << j;
        require(qprime.q(c) == 1, ErrCode::internal, "root class is isotropic");
        root_classes.insert(c);
    });

    GammaImage img;
    img.label = "transvections of h-perp root reflections via the M-side glue";
    for (uint32_t c : root_classes) {
        uint32_t cn = to_n.apply(c);
        img.gens.push_back(models.qn.transvection(cn));
    }
    img.order = group_order_on_disc(models.qn, img.gens);
    require(full_disc_group_order() % img.order == 0, ErrCode::invariant,
            "transvection subgroup order does not divide |O+(F_2^10)|");
    return img;
}

DegreeReport classify_degree(int degree, const GenusOptions& opts) {
    require(degree >= 2 && degree % 2 == 0, ErrCode::invalid_argument,
            "polarization degree must be a positive even integer");
    int d = degree / 2;
    GenusEnumeration g = enumerate_genus(d, opts);
    DegreeReport report;
    report.degree = degree;
    report.all_negative = true;
    for (const GenusClassData& c : g.classes) {
        PolarizationClassData pc;
        pc.d = d;
        pc.genus_class = c;
        pc.reflection_count = reflection_classes(c.gram);
        pc.verdict = kodaira_verdict(pc.reflection_count);
        pc.gamma_image_lower_order = gamma_image_lower(Lattice(c.gram), Int(d)).order;
        if (pc.verdict == Verdict::Inconclusive) {
            report.all_negative = false;
            ++report.inconclusive_count;
        }
        report.classes.push_back(std::move(pc));
    }
    return report;
}

std::string degree_report_md_row(const DegreeReport& r) {
    std::string row = std::to_string(r.degree / 2) + ": [";
    for (size_t i = 0; i < r.classes.size(); ++i) {
        if (i) row += ", ";
        const auto& c = r.classes[i];
        std::string n = c.genus_class.root_halfcount.str();
        row += c.verdict == Verdict::Inconclusive ? "**" + n + "**" : n;
    }
    row += "]";
    return row;
}

std::string emit_table(int d_min, int d_max, const std::string& format, const GenusOptions& opts) {
    require(1 <= d_min && d_min <= d_max, ErrCode::invalid_argument, "bad table range");
    require(format == "md" || format == "csv" || format == "json", ErrCode::invalid_argument,
            "format must be md, csv or json");
    std::string out;
    nlohmann::json jrows = nlohmann::json::array();
    if (format == "csv") out += "d,class_index,half_roots,aut_order,verdict\n";
    for (int d = d_min; d <= d_max; ++d) {
        GenusEnumeration g = enumerate_genus(d, opts);
        if (format == "md") {
            out += genus_table_row(g) + "\n";
        } else if (format == "csv") {
            for (size_t i = 0; i < g.classes.size(); ++i) {
                const auto& c = g.classes[i];
                Verdict v = kodaira_verdict(reflection_classes(c.gram));
                out += std::to_string(d) + "," + std::to_string(i + 1) + "," +
                       c.root_halfcount.str() + "," + c.aut_order.str() + "," + verdict_name(v) +
                       "\n";
            }
        } else {
            nlohmann::json halfs = nlohmann::json::array();
            for (const auto& c : g.classes) halfs.push_back(to_i64(c.root_halfcount));
            jrows.push_back(nlohmann::json{{"d", d},
                                           {"half_counts", halfs},
                                           {"closed", g.closed},
                                           {"mass", g.empirical_mass.str()}});
        }
    }
    if (format == "json") out = jrows.dump(1) + "\n";
    return out;
}

std::optional<std::pair<int, GenusClassData>> find_trivial_aut_class(int d_lo, int d_hi,
                                                                     const GenusOptions& opts) {
    require(1 <= d_lo && d_lo <= d_hi, ErrCode::invalid_argument, "bad degree range");
    for (int d = d_lo; d <= d_hi; ++d) {
        GenusEnumeration g = enumerate_genus(d, opts);
        for (const GenusClassData& c : g.classes) {
            if (c.aut_order == 2) {
                require(aut_group(c.prep()).order == 2, ErrCode::invariant,
                        "trivial-automorphism candidate failed recheck");
                return std::make_pair(d, c);
            }
        }
    }
    return std::nullopt;
}

}  // namespace enrlat
