#include "enrlat.h"

#include "f2grp.hpp"
#include "fqf.hpp"
#include "genus.hpp"
#include "jsonio.hpp"
#include "lattice.hpp"
#include "moduli.hpp"
#include "shortvec.hpp"
#include "verify.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

using namespace enrlat;

struct enrlat_lattice {
    Lattice l;
};

namespace {

thread_local std::string g_last_error = "";

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

enrlat_status to_status(const Error& e) {
    switch (e.code) {
        case ErrCode::invalid_argument: return ENRLAT_ERR_INVALID_ARGUMENT;
        case ErrCode::parse: return ENRLAT_ERR_PARSE;
        case ErrCode::unsupported: return ENRLAT_ERR_UNSUPPORTED;
        case ErrCode::budget: return ENRLAT_ERR_BUDGET;
        case ErrCode::invariant: return ENRLAT_ERR_INVARIANT;
        case ErrCode::io: return ENRLAT_ERR_IO;
        case ErrCode::internal: return ENRLAT_ERR_INTERNAL;
    }
    return ENRLAT_ERR_INTERNAL;
}

template <class Fn>
enrlat_status guarded(Fn&& fn) {
    try {
        fn();
        return ENRLAT_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ENRLAT_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return ENRLAT_ERR_INTERNAL;
    }
}

GenusOptions parse_options(const char* options_json, std::string* format = nullptr,
                           bool* quick = nullptr) {
    GenusOptions opts;
    if (format) *format = "md";
    if (quick) *quick = false;
    if (options_json && *options_json) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(options_json);
        } catch (const std::exception& e) {
            fail(ErrCode::parse, std::string("bad options JSON: ") + e.what());
        }
        require(j.is_object(), ErrCode::parse, "options must be a JSON object");
        if (j.contains("cache_dir")) opts.cache_dir = j["cache_dir"].get<std::string>();
        if (j.contains("primes")) {
            opts.primes.clear();
            for (const auto& p : j["primes"]) opts.primes.push_back(p.get<int64_t>());
        }
        if (j.contains("seed")) opts.seed = j["seed"].get<uint64_t>();
        if (j.contains("budget_secs")) opts.budget_secs = j["budget_secs"].get<double>();
        if (j.contains("progress")) opts.progress = j["progress"].get<bool>();
        if (format && j.contains("format")) *format = j["format"].get<std::string>();
        if (quick && j.contains("quick")) *quick = j["quick"].get<bool>();
    }
    if (const char* env = std::getenv("ENRIQUES_CACHE"); env && *env) opts.cache_dir = env;
    return opts;
}

const Lattice& deref(const enrlat_lattice* l) {
    require(l != nullptr, ErrCode::invalid_argument, "null lattice handle");
    return l->l;
}

}  // namespace

extern "C" {

int enrlat_abi_version(void) { return 1; }

const char* enrlat_last_error(void) { return g_last_error.c_str(); }

void enrlat_string_free(char* s) { std::free(s); }

enrlat_status enrlat_lattice_parse(const char* spec, enrlat_lattice** out) {
    return guarded([&] {
        require(spec && out, ErrCode::invalid_argument, "null argument");
        *out = new enrlat_lattice{lattice_from_spec(spec)};
    });
}

void enrlat_lattice_free(enrlat_lattice* l) { delete l; }

int enrlat_lattice_rank(const enrlat_lattice* l) { return l ? l->l.rank() : -1; }

int enrlat_lattice_is_even(const enrlat_lattice* l) { return l && l->l.is_even() ? 1 : 0; }

enrlat_status enrlat_lattice_signature(const enrlat_lattice* l, int* pos, int* neg) {
    return guarded([&] {
        const Lattice& lat = deref(l);
        require(pos && neg, ErrCode::invalid_argument, "null output");
        *pos = lat.sig().pos;
        *neg = lat.sig().neg;
    });
}

enrlat_status enrlat_lattice_det(const enrlat_lattice* l, char** decimal) {
    return guarded([&] {
        require(decimal, ErrCode::invalid_argument, "null output");
        *decimal = dup_string(deref(l).det().str());
    });
}

enrlat_status enrlat_lattice_to_json(const enrlat_lattice* l, char** json) {
    return guarded([&] {
        require(json, ErrCode::invalid_argument, "null output");
        *json = dup_string(lattice_to_json(deref(l)).dump());
    });
}

enrlat_status enrlat_lattice_info_json(const enrlat_lattice* l, char** json) {
    return guarded([&] {
        require(json, ErrCode::invalid_argument, "null output");
        const Lattice& lat = deref(l);
        nlohmann::json j{{"name", lat.name()},
                         {"rank", lat.rank()},
                         {"signature", {lat.sig().pos, lat.sig().neg}},
                         {"det", lat.det().str()},
                         {"even", lat.is_even()}};
        if (lat.is_even()) {
            FiniteQuadraticForm f = FiniteQuadraticForm::from_lattice(lat);
            j["disc_shape"] = disc_shape(f);
        }
        j["summary"] = lattice_summary(lat);
        *json = dup_string(j.dump());
    });
}

enrlat_status enrlat_root_counts_json(const enrlat_lattice* l, char** json) {
    return guarded([&] {
        require(json, ErrCode::invalid_argument, "null output");
        const Lattice& lat = deref(l);
        ShortVectorEngine eng(lat.gram());
        Int norm = eng.positive() ? Int(2) : Int(-2);
        Int half = eng.count_norm(norm, true);
        std::vector<Int> theta = eng.theta_prefix(Int(8));
        nlohmann::json jt = nlohmann::json::array();
        for (const Int& t : theta) jt.push_back(to_i64(t));
        nlohmann::json j{{"half_count", to_i64(half)},
                         {"count", to_i64(Int(2 * half))},
                         {"min_norm_abs", to_i64(eng.min_norm_abs())},
                         {"theta_prefix", jt}};
        *json = dup_string(j.dump());
    });
}

enrlat_status enrlat_disc_form_json(const enrlat_lattice* l, char** json) {
    return guarded([&] {
        require(json, ErrCode::invalid_argument, "null output");
        FiniteQuadraticForm f = FiniteQuadraticForm::from_lattice(deref(l));
        nlohmann::json j = fqf_to_json(f);
        auto [iso, noniso] = f.count_isotropy();
        j["isotropic_nonzero"] = to_i64(iso);
        j["nonisotropic"] = to_i64(noniso);
        j["sigma_mod8"] = f.milgram_sigma_mod8();
        j["shape"] = disc_shape(f);
        *json = dup_string(j.dump());
    });
}

enrlat_status enrlat_disc_group_order_json(const enrlat_lattice* l, char** json) {
    return guarded([&] {
        require(json, ErrCode::invalid_argument, "null output");
        FiniteQuadraticForm f = FiniteQuadraticForm::from_lattice(deref(l));
        F2QuadSpace space = F2QuadSpace::from_fqf(f);
        std::vector<F2Mat> gens;
        for (uint32_t a : space.nonisotropic()) gens.push_back(space.transvection(a));
        Int order = group_order_on_disc(space, gens);
        nlohmann::json j{{"nonisotropic", gens.size()},
                         {"transvection_group_order", order.str()}};
        *json = dup_string(j.dump());
    });
}

enrlat_status enrlat_genus_json(int d, const char* options_json, char** json) {
    return guarded([&] {
        require(json, ErrCode::invalid_argument, "null output");
        GenusOptions opts = parse_options(options_json);
        GenusEnumeration g = enumerate_genus(d, opts);
        *json = dup_string(genus_to_json(g).dump(1));
    });
}

enrlat_status enrlat_table(int d_min, int d_max, const char* options_json, char** text) {
    return guarded([&] {
        require(text, ErrCode::invalid_argument, "null output");
        std::string format;
        GenusOptions opts = parse_options(options_json, &format);
        *text = dup_string(emit_table(d_min, d_max, format, opts));
    });
}

enrlat_status enrlat_classify_json(int degree, const char* options_json, char** json) {
    return guarded([&] {
        require(json, ErrCode::invalid_argument, "null output");
        GenusOptions opts = parse_options(options_json);
        DegreeReport r = classify_degree(degree, opts);
        nlohmann::json j = degree_report_to_json(r);
        j["md_row"] = degree_report_md_row(r);
        *json = dup_string(j.dump(1));
    });
}

enrlat_status enrlat_find_trivial_aut_json(int d_lo, int d_hi, const char* options_json,
                                           char** json) {
    return guarded([&] {
        require(json, ErrCode::invalid_argument, "null output");
        GenusOptions opts = parse_options(options_json);
        auto hit = find_trivial_aut_class(d_lo, d_hi, opts);
        nlohmann::json j;
        j["found"] = bool(hit);
        if (hit) {
            j["d"] = hit->first;
            j["class"] = nlohmann::json{{"gram", imat_to_json(hit->second.gram)},
                                        {"aut_order", hit->second.aut_order.str()},
                                        {"root_halfcount", to_i64(hit->second.root_halfcount)}};
        }
        *json = dup_string(j.dump(1));
    });
}

enrlat_status enrlat_verify(const char* options_json, char** report, int* failures) {
    return guarded([&] {
        require(report && failures, ErrCode::invalid_argument, "null output");
        VerifyOptions vo;
        vo.genus = parse_options(options_json, nullptr, &vo.quick);
        std::vector<CheckResult> results = run_acceptance(vo);
        std::string text;
        int bad = 0;
        for (const CheckResult& r : results) {
            text += format_check_line(r) + "\n";
            if (!r.pass) ++bad;
        }
        *failures = bad;
        *report = dup_string(text);
    });
}

}  // extern "C"
