// Command-line front end; talks to the core exclusively through the C API.

#include <enrlat.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

namespace {

struct CommonOpts {
    std::string cache_dir;
    std::vector<int64_t> primes = {2, 3};
    std::string format = "md";
    uint64_t seed = 0;
    double budget_secs = 0;
    bool quick = false;
};

std::string options_json(const CommonOpts& o) {
    std::string j = "{";
    j += "\"cache_dir\":\"" + o.cache_dir + "\",";
    j += "\"primes\":[";
    for (size_t i = 0; i < o.primes.size(); ++i) {
        if (i) j += ",";
        j += std::to_string(o.primes[i]);
    }
    j += "],";
    j += "\"seed\":" + std::to_string(o.seed) + ",";
    j += "\"budget_secs\":" + std::to_string(o.budget_secs) + ",";
    j += "\"format\":\"" + o.format + "\",";
    j += std::string("\"quick\":") + (o.quick ? "true" : "false") + ",";
    j += "\"progress\":true";
    j += "}";
    return j;
}

int status_to_exit(enrlat_status st) {
    if (st == ENRLAT_OK) return 0;
    if (st == ENRLAT_ERR_PARSE || st == ENRLAT_ERR_INVALID_ARGUMENT) return 2;
    return 1;
}

int report_error(enrlat_status st) {
    std::fprintf(stderr, "error: %s\n", enrlat_last_error());
    return status_to_exit(st);
}

struct LatticeHandle {
    enrlat_lattice* l = nullptr;
    ~LatticeHandle() { enrlat_lattice_free(l); }
};

int print_string_result(enrlat_status st, char* text) {
    if (st != ENRLAT_OK) return report_error(st);
    size_t len = std::strlen(text);
    std::fputs(text, stdout);
    if (len > 0 && text[len - 1] != '\n') std::fputc('\n', stdout);
    enrlat_string_free(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice toolkit: genus enumeration, discriminant groups and "
                 "Kodaira verdicts for Enriques polarization degrees"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--cache-dir", common.cache_dir,
                   "genus cache directory (ENRIQUES_CACHE overrides)");
    app.add_option("--primes", common.primes, "neighbor primes (default 2 3)");
    app.add_option("--format", common.format, "output format: md | csv | json");
    app.add_option("--seed", common.seed, "traversal shuffle seed (outputs are unaffected)");
    app.add_option("--budget-secs", common.budget_secs, "per-degree time budget, 0 = unlimited");
    app.add_flag("--quick", common.quick, "reduced ranges (d <= 8) where applicable");

    std::string spec;
    int d = 1, d_min = 1, d_max = 8, degree = 2, d_lo = 1, d_hi = 8;

    CLI::App* info = app.add_subcommand("lattice-info", "rank, signature, determinant, D_L shape");
    info->add_option("spec", spec, "lattice name or JSON Gram")->required();

    CLI::App* roots = app.add_subcommand("roots", "root counts of a definite lattice");
    roots->add_option("spec", spec)->required();

    CLI::App* disc = app.add_subcommand("disc", "discriminant form data");
    disc->add_option("spec", spec)->required();

    CLI::App* genus = app.add_subcommand("genus", "enumerate the genus of <-2d> + E8(-1)");
    genus->add_option("d", d, "half degree d >= 1")->required();

    CLI::App* table = app.add_subcommand("table", "genus table over a range of d");
    table->add_option("--min-d", d_min, "first d")->required();
    table->add_option("--max-d", d_max, "last d")->required();

    CLI::App* classify = app.add_subcommand("classify", "Kodaira verdicts for one degree 2d");
    classify->add_option("degree", degree, "even polarization degree h^2")->required();

    CLI::App* group = app.add_subcommand(
        "group-order", "order of the full transvection group on D_L (default: L = N)");
    group->add_option("spec", spec, "lattice with even-type 2-elementary D_L");

    CLI::App* trivial = app.add_subcommand("find-trivial-aut",
                                           "search classes with automorphism group {+-1}");
    trivial->add_option("--min-d", d_lo, "first d")->required();
    trivial->add_option("--max-d", d_hi, "last d")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    std::string opts = options_json(common);

    if (info->parsed() || roots->parsed() || disc->parsed()) {
        LatticeHandle h;
        enrlat_status st = enrlat_lattice_parse(spec.c_str(), &h.l);
        if (st != ENRLAT_OK) return report_error(st);
        char* text = nullptr;
        if (info->parsed()) {
            st = enrlat_lattice_info_json(h.l, &text);
        } else if (roots->parsed()) {
            st = enrlat_root_counts_json(h.l, &text);
        } else {
            st = enrlat_disc_form_json(h.l, &text);
        }
        return print_string_result(st, text);
    }

    if (genus->parsed()) {
        char* text = nullptr;
        enrlat_status st = enrlat_genus_json(d, opts.c_str(), &text);
        return print_string_result(st, text);
    }

    if (table->parsed()) {
        char* text = nullptr;
        enrlat_status st = enrlat_table(d_min, d_max, opts.c_str(), &text);
        return print_string_result(st, text);
    }

    if (classify->parsed()) {
        char* text = nullptr;
        enrlat_status st = enrlat_classify_json(degree, opts.c_str(), &text);
        return print_string_result(st, text);
    }

    if (group->parsed()) {
        LatticeHandle h;
        enrlat_status st = enrlat_lattice_parse(spec.empty() ? "N" : spec.c_str(), &h.l);
        if (st != ENRLAT_OK) return report_error(st);
        char* text = nullptr;
        st = enrlat_disc_group_order_json(h.l, &text);
        return print_string_result(st, text);
    }

    if (trivial->parsed()) {
        char* text = nullptr;
        enrlat_status st = enrlat_find_trivial_aut_json(d_lo, d_hi, opts.c_str(), &text);
        return print_string_result(st, text);
    }

    if (verify->parsed()) {
        char* report = nullptr;
        int failures = 0;
        enrlat_status st = enrlat_verify(opts.c_str(), &report, &failures);
        if (st != ENRLAT_OK) return report_error(st);
        std::fputs(report, stdout);
        enrlat_string_free(report);
        if (failures > 0) {
            std::fprintf(stderr, "%d check(s) failed\n", failures);
            return 1;
        }
        return 0;
    }

    return 2;
}
