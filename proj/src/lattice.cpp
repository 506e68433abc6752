#include "lattice.hpp"

#include <cctype>

namespace enrlat {

Lattice::Lattice(IMat gram, std::string name) : gram_(std::move(gram)), name_(std::move(name)) {
    require(gram_.rows() == gram_.cols(), ErrCode::invalid_argument, "Gram matrix must be square");
    require(gram_.is_symmetric(), ErrCode::invalid_argument, "Gram matrix must be symmetric");
    det_ = enrlat::det(gram_);
    require(rank() == 0 || det_ != 0, ErrCode::invalid_argument, "lattice is degenerate");
    if (rank() > 0) sig_ = signature(gram_);
    even_ = true;
    for (int i = 0; i < rank(); ++i)
        if (gram_.at(i, i) % 2 != 0) { even_ = false; break; }
}

Lattice Lattice::renamed(std::string name) const {
    Lattice l = *this;
    l.name_ = std::move(name);
    return l;
}

Lattice RationalLattice::to_lattice(std::string nm) const {
    require(is_integral(), ErrCode::invalid_argument, "rational lattice is not integral");
    return Lattice(gram.to_imat(), nm.empty() ? name : nm);
}

Lattice make_U(Int scale) {
    require(scale != 0, ErrCode::invalid_argument, "U(n) needs n != 0");
    IMat g(2, 2);
    g.at(0, 1) = scale;
    g.at(1, 0) = scale;
    std::string nm = scale == 1 ? "U" : "U(" + scale.str() + ")";
    return Lattice(g, nm);
}

namespace {

std::string scaled_name(const std::string& base, const Int& scale) {
    if (scale == 1) return base;
    return base + "(" + scale.str() + ")";
}

}  // namespace

Lattice make_A(int k, Int scale) {
    require(k >= 1, ErrCode::invalid_argument, "A_k needs k >= 1");
    require(scale != 0, ErrCode::invalid_argument, "zero scale");
    IMat g(k, k);
    for (int i = 0; i < k; ++i) {
        g.at(i, i) = 2 * scale;
        if (i + 1 < k) {
            g.at(i, i + 1) = -scale;
            g.at(i + 1, i) = -scale;
        }
    }
    return Lattice(g, scaled_name("A" + std::to_string(k), scale));
}

Lattice make_D(int k, Int scale) {
    require(k >= 2, ErrCode::invalid_argument, "D_k needs k >= 2");
    require(scale != 0, ErrCode::invalid_argument, "zero scale");
    // Basis e_i - e_{i+1} (i < k) and e_{k-1} + e_k inside Z^k.
    IMat basis(k, k);
    for (int i = 0; i + 1 < k; ++i) {
        basis.at(i, i) = 1;
        basis.at(i, i + 1) = -1;
    }
    basis.at(k - 1, k - 2) = 1;
    basis.at(k - 1, k - 1) = 1;
    IMat g = (basis * basis.transposed()).scaled(scale);
    return Lattice(g, scaled_name("D" + std::to_string(k), scale));
}

namespace {

Lattice make_E(int k, Int scale) {
    // Bourbaki numbering: chain 1-3-4-5-6-7(-8), branch node 2 attached to 4.
    require(k == 7 || k == 8, ErrCode::invalid_argument, "only E7 and E8 are provided");
    require(scale != 0, ErrCode::invalid_argument, "zero scale");
    IMat g(k, k);
    auto edge = [&](int a, int b) {
        g.at(a - 1, b - 1) = -scale;
        g.at(b - 1, a - 1) = -scale;
    };
    for (int i = 0; i < k; ++i) g.at(i, i) = 2 * scale;
    edge(1, 3);
    edge(2, 4);
    edge(3, 4);
    edge(4, 5);
    edge(5, 6);
    edge(6, 7);
    if (k == 8) edge(7, 8);
    return Lattice(g, scaled_name("E" + std::to_string(k), scale));
}

}  // namespace

Lattice make_E7(Int scale) { return make_E(7, scale); }
Lattice make_E8(Int scale) { return make_E(8, scale); }

Lattice make_rank1(Int k) {
    require(k != 0, ErrCode::invalid_argument, "<k> needs k != 0");
    IMat g(1, 1);
    g.at(0, 0) = k;
    return Lattice(g, "<" + k.str() + ">");
}

Lattice make_M() { return direct_sum(make_U(2), make_E8(-2)).renamed("M"); }

Lattice make_N() {
    return direct_sum(make_U(), direct_sum(make_U(2), make_E8(-2))).renamed("N");
}

Lattice make_LK3() {
    Lattice l = make_U();
    l = direct_sum(l, make_U());
    l = direct_sum(l, make_U());
    l = direct_sum(l, make_E8(-1));
    l = direct_sum(l, make_E8(-1));
    return l.renamed("LK3");
}

namespace {

struct SpecParser {
    const std::string& s;
    size_t pos = 0;

    explicit SpecParser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    Int parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        require(pos > start && std::isdigit(static_cast<unsigned char>(s[pos - 1])),
                ErrCode::parse, "expected integer in lattice spec");
        return Int(s.substr(start, pos - start));
    }

    Lattice parse_term() {
        skip_ws();
        require(pos < s.size(), ErrCode::parse, "empty lattice term");
        int mult = 1;
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            mult = std::stoi(s.substr(start, pos - start));
            require(mult >= 1, ErrCode::parse, "multiplicity must be positive");
        }
        Lattice base = parse_atom();
        Lattice out = base;
        for (int i = 1; i < mult; ++i) out = direct_sum(out, base);
        if (mult > 1) out = out.renamed(std::to_string(mult) + base.name());
        return out;
    }

    Lattice parse_atom() {
        skip_ws();
        if (eat('<')) {
            Int k = parse_int();
            require(eat('>'), ErrCode::parse, "expected '>' in <k>");
            return make_rank1(k);
        }
        size_t start = pos;
        while (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string word = s.substr(start, pos - start);
        require(!word.empty(), ErrCode::parse, "expected lattice name");
        int sub = -1;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            sub = std::stoi(s.substr(dstart, pos - dstart));
        }
        Int scale = 1;
        if (eat('(')) {
            scale = parse_int();
            require(eat(')'), ErrCode::parse, "expected ')' after scale");
        }
        if (word == "U") {
            require(sub < 0, ErrCode::parse, "U takes no rank subscript");
            return make_U(scale);
        }
        if (word == "A") return make_A(sub, scale);
        if (word == "D") return make_D(sub, scale);
        if (word == "E") {
            require(sub == 7 || sub == 8, ErrCode::parse, "only E7 and E8 are known");
            return make_E(sub, scale);
        }
        auto plain = [&](const Lattice& l) {
            require(sub < 0 && scale == 1, ErrCode::parse, word + " takes no parameters");
            return l;
        };
        if (word == "M") return plain(make_M());
        if (word == "N") return plain(make_N());
        if (word == "LK3" || word == "L_K3" || word == "K3") return plain(make_LK3());
        fail(ErrCode::parse, "unknown lattice name '" + word + "'");
    }

    Lattice parse() {
        Lattice out = parse_term();
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            if (s[pos] == '+') { ++pos; }
            else fail(ErrCode::parse, std::string("unexpected character '") + s[pos] + "' in lattice spec");
            Lattice rhs = parse_term();
            std::string nm = out.name() + "+" + rhs.name();
            out = direct_sum(out, rhs).renamed(nm);
        }
        return out;
    }
};

}  // namespace

Lattice parse_lattice_name(const std::string& spec) { return SpecParser(spec).parse(); }

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    std::string nm;
    if (!a.name().empty() && !b.name().empty()) nm = a.name() + "+" + b.name();
    return Lattice(IMat::block_diag(a.gram(), b.gram()), nm);
}

Lattice rescale(const Lattice& l, const Int& n) {
    require(n != 0, ErrCode::invalid_argument, "rescale by zero");
    std::string nm = l.name().empty() ? "" : l.name() + "(" + n.str() + ")";
    return Lattice(l.gram().scaled(n), nm);
}

RationalLattice rescale(const RationalLattice& l, const Int& n) {
    require(n != 0, ErrCode::invalid_argument, "rescale by zero");
    return RationalLattice{l.gram.scaled(Rat(n)), l.name.empty() ? "" : l.name + "(" + n.str() + ")"};
}

RationalLattice dual(const Lattice& l) {
    return RationalLattice{inverse(l.gram()), l.name().empty() ? "" : l.name() + "^"};
}

RationalLattice dual(const RationalLattice& l) {
    return RationalLattice{inverse(l.gram), l.name.empty() ? "" : l.name + "^"};
}

Int vector_norm(const std::vector<Int>& v, const Lattice& l) { return pairing(v, l.gram(), v); }

bool is_primitive(const std::vector<Int>& v) {
    Int g = gcd_all(v);
    require(g != 0, ErrCode::invalid_argument, "zero vector");
    return g == 1;
}

Int divisor(const std::vector<Int>& v, const Lattice& l) {
    require(int(v.size()) == l.rank(), ErrCode::invalid_argument, "vector length mismatch");
    Int g = gcd_all(mul_row(v, l.gram()));
    require(g != 0, ErrCode::invalid_argument, "zero vector has no divisor");
    return g;
}

Lattice orth_complement(const std::vector<Int>& h, const Lattice& l) {
    require(int(h.size()) == l.rank(), ErrCode::invalid_argument, "vector length mismatch");
    require(is_primitive(h), ErrCode::invalid_argument, "orth_complement needs a primitive vector");
    require(vector_norm(h, l) != 0, ErrCode::invalid_argument, "orth_complement of isotropic vector");
    // Kernel of x |-> (x, h); the HNF transform rows give a saturated basis.
    IMat col(l.rank(), 1);
    std::vector<Int> gh = mul_row(h, l.gram());
    for (int i = 0; i < l.rank(); ++i) col.at(i, 0) = gh[i];
    IMat basis = left_kernel(col);
    require(basis.rows() == l.rank() - 1, ErrCode::internal, "complement rank mismatch");
    IMat g = basis * l.gram() * basis.transposed();
    return Lattice(g);
}

namespace {

EnriquesEmbeddings build_enriques_embeddings() {
    EnriquesEmbeddings e;
    e.m = make_M();
    e.n = make_N();
    e.k3 = make_LK3();
    // LK3 coordinate blocks: U1(0..1), U2(2..3), U3(4..5), E8a(6..13), E8b(14..21).
    e.m_to_k3 = IMat(10, 22);
    for (int i = 0; i < 2; ++i) {
        e.m_to_k3.at(i, 0 + i) = 1;   // x into U1
        e.m_to_k3.at(i, 4 + i) = 1;   // x into U3
    }
    for (int j = 0; j < 8; ++j) {
        e.m_to_k3.at(2 + j, 6 + j) = 1;    // u into E8a
        e.m_to_k3.at(2 + j, 14 + j) = 1;   // u into E8b
    }
    e.n_to_k3 = IMat(12, 22);
    for (int i = 0; i < 2; ++i) e.n_to_k3.at(i, 2 + i) = 1;  // y into U2
    for (int i = 0; i < 2; ++i) {
        e.n_to_k3.at(2 + i, 0 + i) = 1;    // z into U1
        e.n_to_k3.at(2 + i, 4 + i) = -1;   // -z into U3
    }
    for (int j = 0; j < 8; ++j) {
        e.n_to_k3.at(4 + j, 6 + j) = 1;    // v into E8a
        e.n_to_k3.at(4 + j, 14 + j) = -1;  // -v into E8b
    }
    e.rho = IMat(22, 22);
    for (int i = 0; i < 2; ++i) {
        e.rho.at(0 + i, 4 + i) = 1;   // x -> slot 3
        e.rho.at(2 + i, 2 + i) = -1;  // y -> -y
        e.rho.at(4 + i, 0 + i) = 1;   // z -> slot 1
    }
    for (int j = 0; j < 8; ++j) {
        e.rho.at(6 + j, 14 + j) = 1;  // u -> slot v
        e.rho.at(14 + j, 6 + j) = 1;  // v -> slot u
    }
    return e;
}

}  // namespace

EnriquesEmbeddings enriques_embeddings() {
    static const EnriquesEmbeddings e = build_enriques_embeddings();
    return e;
}

}  // namespace enrlat
