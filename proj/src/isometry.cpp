#include "isometry.hpp"

#include "lll.hpp"
#include "shortvec.hpp"

#include <algorithm>
#include <set>

namespace enrlat {

namespace {

int64_t dot64(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    int64_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

uint64_t fnv_mix(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::vector<int64_t> to_i64_vec(const std::vector<Int>& v) {
    std::vector<int64_t> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = to_i64(v[i]);
    return out;
}

}  // namespace

PreparedLattice::PreparedLattice(const IMat& gram) {
    require(gram.rows() > 0, ErrCode::invalid_argument, "empty lattice");
    n_ = gram.rows();
    original_ = gram;
    require(gram.at(0, 0) != 0, ErrCode::invalid_argument, "indefinite or degenerate lattice");
    negative_ = gram.at(0, 0) < 0;
    reduced_ = lll_reduce_definite(gram, &t_);
    pos_ = negative_ ? reduced_.scaled(-1) : reduced_;
    ShortVectorEngine probe(pos_);
    min_norm_ = probe.min_norm_abs();
}

void PreparedLattice::ensure_norms(const std::vector<int64_t>& norms) const {
    std::vector<int64_t> want = norms;
    want.push_back(to_i64(min_norm_));
    if (sys_)
        for (int64_t m : sys_->norm_bounds) want.push_back(m);
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    if (sys_ && want == sys_->norm_bounds) return;
    build(want);
}

void PreparedLattice::build(const std::vector<int64_t>& norms) const {
    auto sys = std::make_shared<System>();
    sys->norm_bounds = norms;
    std::set<int64_t> wanted(norms.begin(), norms.end());
    int64_t bound = norms.empty() ? to_i64(min_norm_) : norms.back();
    ShortVectorEngine eng(pos_);
    eng.scan_half(Int(bound), [&](const std::vector<Int>& v, const Int& q) {
        int64_t nq = to_i64(q);
        if (!wanted.count(nq)) return;
        std::vector<int64_t> c = to_i64_vec(v);
        std::vector<int64_t> neg(c.size());
        for (size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
        sys->vecs.push_back(std::move(c));
        sys->norms.push_back(nq);
        sys->vecs.push_back(std::move(neg));
        sys->norms.push_back(nq);
    });
    int count = int(sys->vecs.size());
    std::vector<int64_t> g64(size_t(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) g64[size_t(i) * n_ + j] = to_i64(pos_.at(i, j));
    sys->gv.resize(count);
    for (int a = 0; a < count; ++a) {
        std::vector<int64_t> w(n_);
        for (int i = 0; i < n_; ++i) {
            int64_t s = 0;
            for (int j = 0; j < n_; ++j) s += g64[size_t(i) * n_ + j] * sys->vecs[a][j];
            w[i] = s;
        }
        sys->gv[a] = std::move(w);
        sys->norm_count[sys->norms[a]] += 1;
        sys->index[sys->vecs[a]] = a;
    }
    // Fingerprint: histogram of pairings against the minimal-norm shell.
    std::vector<int> ref;
    int64_t m0 = to_i64(min_norm_);
    for (int a = 0; a < count; ++a)
        if (sys->norms[a] == m0) ref.push_back(a);
    sys->fps.resize(count);
    for (int a = 0; a < count; ++a) {
        std::map<int64_t, int> hist;
        for (int r : ref) hist[dot64(sys->vecs[a], sys->gv[r])] += 1;
        uint64_t h = 1469598103934665603ULL;
        h = fnv_mix(h, uint64_t(sys->norms[a]));
        for (const auto& [val, cnt] : hist) {
            h = fnv_mix(h, uint64_t(val ^ 0x55555555));
            h = fnv_mix(h, uint64_t(cnt));
        }
        sys->fps[a] = h;
    }
    sys_ = std::move(sys);
}

namespace {

// Shared backtracking state over a prepared target system. Source data is
// the reduced positive Gram of the source lattice; perm fixes the level
// order (fewest candidates first).
struct Search {
    int n;
    const PreparedLattice::System* tgt;
    std::vector<int64_t> gs;               // source positized Gram
    std::vector<uint64_t> src_fp;          // fingerprint of source basis vectors
    std::vector<int> perm;                 // level -> source basis index
    std::vector<std::vector<int>> cands;   // per level: target indices, norm+fp filtered
    std::vector<int> chosen;               // per level: chosen target index

    int64_t g(int i, int j) const { return gs[size_t(i) * n + j]; }

    // products of target vectors a and b
    int64_t tprod(int a, int b) const { return dot64(tgt->vecs[a], tgt->gv[b]); }

    bool feasible(int level, int cand) const {
        for (int j = 0; j < level; ++j)
            if (tprod(cand, chosen[j]) != g(perm[level], perm[j])) return false;
        return true;
    }

    // Depth-first completion from the given level; returns true on success.
    bool extend(int level) {
        if (level == n) return true;
        for (int cand : cands[level]) {
            if (!feasible(level, cand)) continue;
            chosen[level] = cand;
            if (extend(level + 1)) return true;
        }
        chosen[level] = -1;
        return false;
    }
};

// use_fps: include per-vector fingerprints in the candidate filter. The
// source system is consulted only in that case.
std::unique_ptr<Search> make_search(const IMat& src_reduced_pos,
                                    const PreparedLattice::System* ssys,
                                    const PreparedLattice::System& tsys) {
    auto s = std::make_unique<Search>();
    s->n = src_reduced_pos.rows();
    s->tgt = &tsys;
    s->gs.resize(size_t(s->n) * s->n);
    for (int i = 0; i < s->n; ++i)
        for (int j = 0; j < s->n; ++j) s->gs[size_t(i) * s->n + j] = to_i64(src_reduced_pos.at(i, j));
    s->src_fp.assign(s->n, 0);
    bool use_fps = ssys != nullptr;
    if (use_fps) {
        // Fingerprints of the source basis vectors (unit rows are in the system).
        for (int i = 0; i < s->n; ++i) {
            std::vector<int64_t> e(s->n, 0);
            e[i] = 1;
            auto it = ssys->index.find(e);
            require(it != ssys->index.end(), ErrCode::internal, "basis vector missing from system");
            s->src_fp[i] = ssys->fps[it->second];
        }
    }
    auto matches = [&](size_t a, int basis) {
        if (tsys.norms[a] != s->g(basis, basis)) return false;
        return !use_fps || tsys.fps[a] == s->src_fp[basis];
    };
    // Level order: fewest matching candidates first.
    std::vector<std::pair<int64_t, int>> order;
    for (int i = 0; i < s->n; ++i) {
        int64_t cnt = 0;
        for (size_t a = 0; a < tsys.vecs.size(); ++a)
            if (matches(a, i)) ++cnt;
        order.emplace_back(cnt, i);
    }
    std::sort(order.begin(), order.end());
    s->perm.resize(s->n);
    for (int l = 0; l < s->n; ++l) s->perm[l] = order[l].second;
    s->cands.assign(s->n, {});
    for (int l = 0; l < s->n; ++l) {
        int b = s->perm[l];
        for (size_t a = 0; a < tsys.vecs.size(); ++a)
            if (matches(a, b)) s->cands[l].push_back(int(a));
    }
    s->chosen.assign(s->n, -1);
    return s;
}

IMat rows_to_imat(const Search& s) {
    IMat p(s.n, s.n);
    for (int l = 0; l < s.n; ++l) {
        int b = s.perm[l];
        for (int j = 0; j < s.n; ++j) p.at(b, j) = s.tgt->vecs[s.chosen[l]][j];
    }
    return p;
}

std::vector<int64_t> source_norm_list(const PreparedLattice& src) {
    std::vector<int64_t> norms;
    for (int i = 0; i < src.n(); ++i) norms.push_back(to_i64(abs(src.reduced_pos().at(i, i))));
    return norms;
}

}  // namespace

namespace {

// Completes a successful search into a verified witness w, w Gs w^T = Gt.
IMat witness_from_search(const Search& s, const IMat& src_transform, const IMat& src_original,
                         const PreparedLattice& tgt) {
    IMat p = rows_to_imat(s);
    // p maps reduced src basis into reduced tgt coords: p * red_t * p^T = red_s.
    IMat m = inverse(src_transform).to_imat() * p * tgt.transform();
    // m * G_t * m^T = G_s; the witness goes the other way.
    IMat w = inverse(m).to_imat();
    require(is_isometry_witness(w, src_original, tgt.original()), ErrCode::internal,
            "isometry witness verification failed");
    return w;
}

}  // namespace

std::optional<IMat> find_isometry(const PreparedLattice& src, const PreparedLattice& tgt) {
    require(src.negative() == tgt.negative(), ErrCode::invalid_argument,
            "isometry test needs lattices of the same definiteness sign");
    if (src.n() != tgt.n()) return std::nullopt;
    if (det(src.reduced_pos()) != det(tgt.reduced_pos())) return std::nullopt;
    if (src.min_norm() != tgt.min_norm()) return std::nullopt;
    std::vector<int64_t> norms = source_norm_list(src);
    src.ensure_norms(norms);
    tgt.ensure_norms(norms);
    const auto& ssys = src.system();
    const auto& tsys = tgt.system();
    for (int64_t m : norms) {
        auto is = ssys.norm_count.find(m), it = tsys.norm_count.find(m);
        int64_t cs = is == ssys.norm_count.end() ? 0 : is->second;
        int64_t ct = it == tsys.norm_count.end() ? 0 : it->second;
        if (cs != ct) return std::nullopt;
    }
    auto search = make_search(src.reduced_pos(), &ssys, tsys);
    if (!search->extend(0)) return std::nullopt;
    return witness_from_search(*search, src.transform(), src.original(), tgt);
}

std::optional<IMat> find_isometry(const IMat& gram_src, const IMat& gram_tgt) {
    PreparedLattice a(gram_src), b(gram_tgt);
    return find_isometry(a, b);
}

std::optional<IMat> find_isometry_light(const IMat& gram_src, const PreparedLattice& tgt) {
    if (gram_src.rows() != tgt.n()) return std::nullopt;
    require(gram_src.rows() > 0 && gram_src.at(0, 0) != 0, ErrCode::invalid_argument,
            "indefinite or degenerate lattice");
    bool negative = gram_src.at(0, 0) < 0;
    require(negative == tgt.negative(), ErrCode::invalid_argument,
            "isometry test needs lattices of the same definiteness sign");
    IMat ts;
    IMat reduced = lll_reduce_definite(gram_src, &ts);
    IMat pos = negative ? reduced.scaled(-1) : reduced;
    if (det(pos) != det(tgt.reduced_pos())) return std::nullopt;
    std::vector<int64_t> norms;
    for (int i = 0; i < pos.rows(); ++i) norms.push_back(to_i64(pos.at(i, i)));
    tgt.ensure_norms(norms);
    auto search = make_search(pos, nullptr, tgt.system());
    if (!search->extend(0)) return std::nullopt;
    return witness_from_search(*search, ts, gram_src, tgt);
}

AutGroup aut_group(const PreparedLattice& l) {
    std::vector<int64_t> norms = source_norm_list(l);
    l.ensure_norms(norms);
    auto search = make_search(l.reduced_pos(), &l.system(), l.system());
    Search& s = *search;
    const auto& sys = l.system();

    AutGroup out;
    std::vector<std::vector<int64_t>> reduced_gens;  // flattened matrices on reduced basis
    std::vector<int> unit_index(s.n);
    for (int i = 0; i < s.n; ++i) {
        std::vector<int64_t> e(s.n, 0);
        e[i] = 1;
        unit_index[i] = sys.index.at(e);
    }

    // Orbit-stabilizer down the chain of pinned basis prefixes: the order is
    // the product over levels of the orbit size of the level's basis vector
    // under the stabilizer of the earlier ones. Membership of a candidate in
    // the orbit is decided by an explicit completion search.
    std::vector<std::vector<int64_t>> level_gens_mat;  // gens fixing prefix < level (current level only)
    for (int level = 0; level < s.n; ++level) {
        for (int j = 0; j < level; ++j) s.chosen[j] = unit_index[s.perm[j]];
        std::set<int> orbit;
        orbit.insert(unit_index[s.perm[level]]);
        level_gens_mat.clear();
        auto close_orbit = [&]() {
            std::vector<int> queue(orbit.begin(), orbit.end());
            while (!queue.empty()) {
                int v = queue.back();
                queue.pop_back();
                for (const auto& gm : level_gens_mat) {
                    // image of vector v under gen (row * matrix)
                    std::vector<int64_t> img(s.n, 0);
                    for (int i = 0; i < s.n; ++i) {
                        int64_t c = sys.vecs[v][i];
                        if (c == 0) continue;
                        for (int j = 0; j < s.n; ++j) img[j] += c * gm[size_t(i) * s.n + j];
                    }
                    auto it = sys.index.find(img);
                    require(it != sys.index.end(), ErrCode::internal, "orbit left the vector system");
                    if (orbit.insert(it->second).second) queue.push_back(it->second);
                }
            }
        };
        for (int cand : s.cands[level]) {
            if (orbit.count(cand)) continue;
            if (!s.feasible(level, cand)) continue;
            s.chosen[level] = cand;
            bool found = s.extend(level + 1);
            if (!found) {
                s.chosen[level] = -1;
                continue;
            }
            IMat p = rows_to_imat(s);  // p * red * p^T = red, fixes prefix
            std::vector<int64_t> flat(size_t(s.n) * s.n);
            for (int i = 0; i < s.n; ++i)
                for (int j = 0; j < s.n; ++j) flat[size_t(i) * s.n + j] = to_i64(p.at(i, j));
            level_gens_mat.push_back(std::move(flat));
            IMat tinv = inverse(l.transform()).to_imat();
            IMat g = tinv * p * l.transform();
            require(g * l.original() * g.transposed() == l.original(), ErrCode::internal,
                    "automorphism verification failed");
            out.gens.push_back(g);
            close_orbit();
        }
        out.order *= Int(uint64_t(orbit.size()));
        for (int j = level; j < s.n; ++j) s.chosen[j] = -1;
    }
    return out;
}

AutGroup aut_group(const IMat& gram) {
    PreparedLattice l(gram);
    return aut_group(l);
}

Int aut_order(const IMat& gram) { return aut_group(gram).order; }

bool is_isometry_witness(const IMat& w, const IMat& gram_src, const IMat& gram_tgt) {
    if (w.rows() != gram_src.rows() || w.cols() != gram_src.cols()) return false;
    return w * gram_src * w.transposed() == gram_tgt;
}

}  // namespace enrlat
