#include "jsonio.hpp"

#include "moduli.hpp"

namespace enrlat {

using nlohmann::json;

json imat_to_json(const IMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            const Int& v = m.at(i, j);
            require(v >= INT64_MIN && v <= INT64_MAX, ErrCode::unsupported,
                    "matrix entry too large for JSON");
            row.push_back(to_i64(v));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

IMat imat_from_json(const json& j) {
    require(j.is_array() && !j.empty(), ErrCode::parse, "expected a nonempty matrix array");
    int rows = int(j.size());
    require(j[0].is_array(), ErrCode::parse, "expected an array of rows");
    int cols = int(j[0].size());
    IMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        require(j[i].is_array() && int(j[i].size()) == cols, ErrCode::parse, "ragged matrix rows");
        for (int c = 0; c < cols; ++c) {
            require(j[i][c].is_number_integer(), ErrCode::parse, "matrix entries must be integers");
            m.at(i, c) = Int(j[i][c].get<int64_t>());
        }
    }
    return m;
}

json lattice_to_json(const Lattice& l) {
    return json{{"name", l.name()}, {"rank", l.rank()}, {"gram", imat_to_json(l.gram())}};
}

Lattice lattice_from_json(const json& j) {
    require(j.is_object() && j.contains("gram"), ErrCode::parse, "lattice JSON needs a gram field");
    IMat g = imat_from_json(j["gram"]);
    std::string name = j.value("name", std::string());
    if (j.contains("rank")) {
        require(j["rank"].is_number_integer() && j["rank"].get<int64_t>() == g.rows(),
                ErrCode::parse, "rank field disagrees with the Gram matrix");
    }
    return Lattice(g, name);
}

Lattice lattice_from_spec(const std::string& spec) {
    std::string trimmed = spec;
    size_t a = trimmed.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) fail(ErrCode::parse, "empty lattice spec");
    if (trimmed[a] == '{' || trimmed[a] == '[') {
        json j;
        try {
            j = json::parse(trimmed);
        } catch (const std::exception& e) {
            fail(ErrCode::parse, std::string("bad lattice JSON: ") + e.what());
        }
        if (j.is_array()) return Lattice(imat_from_json(j));
        return lattice_from_json(j);
    }
    return parse_lattice_name(spec);
}

json fqf_to_json(const FiniteQuadraticForm& f) {
    require(f.order() <= Int(4096), ErrCode::budget, "discriminant group too large to serialize");
    json divisors = json::array();
    for (const Int& d : f.divisors()) divisors.push_back(to_i64(d));
    json q = json::array();
    f.for_each([&](const std::vector<Int>& c) {
        json coords = json::array();
        for (const Int& x : c) coords.push_back(to_i64(x));
        Rat v = f.q(c);
        q.push_back(json::array({coords, to_i64(numerator(v)), to_i64(denominator(v))}));
    });
    return json{{"divisors", divisors}, {"q", q}};
}

namespace {
constexpr int kGenusSchema = 1;
}

json genus_to_json(const GenusEnumeration& g) {
    json classes = json::array();
    for (const auto& c : g.classes) {
        json theta = json::array();
        for (const Int& t : c.theta) theta.push_back(to_i64(t));
        classes.push_back(json{{"gram", imat_to_json(c.gram)},
                               {"aut_order", c.aut_order.str()},
                               {"root_halfcount", to_i64(c.root_halfcount)},
                               {"theta", theta}});
    }
    json primes = json::array();
    for (int64_t p : g.primes) primes.push_back(p);
    return json{{"schema", kGenusSchema},
                {"kind", "genus"},
                {"d", g.d},
                {"primes", primes},
                {"closed", g.closed},
                {"mass_certified", g.mass_certified},
                {"mass", g.empirical_mass.str()},
                {"edges", g.edges},
                {"edge_disc_checks", g.edge_disc_checks},
                {"classes", classes}};
}

bool genus_from_json(const json& j, GenusEnumeration& out) {
    if (!j.is_object() || j.value("schema", -1) != kGenusSchema || j.value("kind", "") != "genus")
        return false;
    try {
        out.d = j.at("d").get<int>();
        out.primes.clear();
        for (const auto& p : j.at("primes")) out.primes.push_back(p.get<int64_t>());
        out.closed = j.at("closed").get<bool>();
        out.mass_certified = j.value("mass_certified", false);
        out.empirical_mass = Rat(j.at("mass").get<std::string>());
        out.edges = j.value("edges", int64_t(0));
        out.edge_disc_checks = j.value("edge_disc_checks", int64_t(0));
        out.classes.clear();
        for (const auto& cj : j.at("classes")) {
            GenusClassData c;
            c.gram = imat_from_json(cj.at("gram"));
            c.aut_order = Int(cj.at("aut_order").get<std::string>());
            c.root_halfcount = Int(cj.at("root_halfcount").get<int64_t>());
            for (const auto& t : cj.at("theta")) c.theta.push_back(Int(t.get<int64_t>()));
            out.classes.push_back(std::move(c));
        }
    } catch (...) {
        return false;
    }
    return true;
}

json degree_report_to_json(const DegreeReport& r) {
    json classes = json::array();
    for (const auto& c : r.classes) {
        classes.push_back(json{{"gram", imat_to_json(c.genus_class.gram)},
                               {"half_count", to_i64(c.genus_class.root_halfcount)},
                               {"R", to_i64(c.reflection_count)},
                               {"verdict", verdict_name(c.verdict)},
                               {"gamma_lower_order", c.gamma_image_lower_order.str()}});
    }
    return json{{"degree", r.degree},
                {"classes", classes},
                {"all_negative", r.all_negative},
                {"inconclusive_count", r.inconclusive_count}};
}

std::string disc_shape(const FiniteQuadraticForm& f) {
    if (f.is_trivial()) return "trivial";
    if (f.is_two_elementary()) return "(Z/2)^" + std::to_string(f.gens());
    if (f.is_cyclic()) return "Z/" + f.divisors()[0].str();
    std::string s;
    for (int i = 0; i < f.gens(); ++i) {
        if (i) s += " x ";
        s += "Z/" + f.divisors()[i].str();
    }
    return s;
}

std::string lattice_summary(const Lattice& l) {
    Signature sg = l.sig();
    std::string s = "rank " + std::to_string(l.rank()) + ", sig (" + std::to_string(sg.pos) + "," +
                    std::to_string(sg.neg) + "), det " + l.det().str();
    if (l.is_even()) {
        FiniteQuadraticForm f = FiniteQuadraticForm::from_lattice(l);
        s += ", D = " + disc_shape(f);
    } else {
        s += ", odd";
    }
    return s;
}

}  // namespace enrlat
