#include "lagrangia/resolution.hpp"

#include <algorithm>
#include <set>

namespace lagrangia {

namespace {

// ----------------------------------------------------------------------------
// module elements over R^ncomp, position-over-term order with component 0
// ranked highest -- an elimination order for the graph construction
// ----------------------------------------------------------------------------

struct ModTerm {
    uint32_t comp;
    Monomial m;
    uint64_t c;
};

// a > b iff smaller component, else larger monomial
int modterm_cmp(const ModTerm& a, const ModTerm& b, const Ring& r) {
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return mono_cmp(a.m, b.m, r->order, r->nvars);
}

struct ModElem {
    std::vector<ModTerm> t; // sorted descending, no zero coefficients

    bool is_zero() const { return t.empty(); }
    const ModTerm& lead() const { return t.front(); }
};

ModElem mod_normalize(const Ring& r, std::vector<ModTerm> terms) {
    std::sort(terms.begin(), terms.end(),
              [&](const ModTerm& a, const ModTerm& b) { return modterm_cmp(a, b, r) > 0; });
    std::vector<ModTerm> out;
    const auto& f = *r->field;
    for (auto& x : terms) {
        if (!out.empty() && out.back().comp == x.comp && out.back().m == x.m) {
            out.back().c = f.add(out.back().c, x.c);
            if (out.back().c == 0) out.pop_back();
        } else if (x.c != 0) {
            out.push_back(x);
        }
    }
    return {std::move(out)};
}

ModElem mod_add(const Ring& r, const ModElem& a, const ModElem& b) {
    std::vector<ModTerm> all = a.t;
    all.insert(all.end(), b.t.begin(), b.t.end());
    return mod_normalize(r, std::move(all));
}

// v[from..] - (c, m) * g by sorted merge; multiplying g by one term keeps its
// term order, so no re-sort is needed
ModElem mod_sub_times_from(const Ring& r, const ModElem& v, size_t from, uint64_t c,
                           const Monomial& m, const ModElem& g) {
    const auto& f = *r->field;
    uint64_t nc = f.neg(c);
    std::vector<ModTerm> out;
    out.reserve(v.t.size() - from + g.t.size());
    size_t i = from, j = 0;
    while (i < v.t.size() || j < g.t.size()) {
        if (j == g.t.size()) {
            out.push_back(v.t[i++]);
            continue;
        }
        ModTerm gt{g.t[j].comp, mono_mul(g.t[j].m, m), f.mul(g.t[j].c, nc)};
        if (i == v.t.size()) {
            if (gt.c) out.push_back(gt);
            ++j;
            continue;
        }
        int cmp = modterm_cmp(v.t[i], gt, r);
        if (cmp > 0) {
            out.push_back(v.t[i++]);
        } else if (cmp < 0) {
            if (gt.c) out.push_back(gt);
            ++j;
        } else {
            uint64_t s = f.add(v.t[i].c, gt.c);
            if (s) out.push_back({gt.comp, gt.m, s});
            ++i;
            ++j;
        }
    }
    return {std::move(out)};
}

// v - (c, m) * g
ModElem mod_sub_times(const Ring& r, const ModElem& v, uint64_t c, const Monomial& m,
                      const ModElem& g) {
    return mod_sub_times_from(r, v, 0, c, m, g);
}

ModElem mod_scaled(const Ring& r, const ModElem& v, uint64_t c) {
    const auto& f = *r->field;
    std::vector<ModTerm> out;
    for (const auto& x : v.t) {
        uint64_t nc = f.mul(x.c, c);
        if (nc) out.push_back({x.comp, x.m, nc});
    }
    return {std::move(out)}; // scaling keeps order
}

int mod_degree(const ModElem& v, const std::vector<int>& shifts) {
    return v.is_zero() ? -1 : (int)v.t.front().m.deg + shifts[v.t.front().comp];
}

bool mod_homogeneous(const ModElem& v, const std::vector<int>& shifts) {
    if (v.is_zero()) return true;
    int d = mod_degree(v, shifts);
    for (const auto& x : v.t)
        if ((int)x.m.deg + shifts[x.comp] != d) return false;
    return true;
}

// Full normal form against basis: terms with comp >= reduce_limit pass through
// to the remainder untouched (used by the cofactor division).  The working
// element is consumed through an offset; the reducer's lead always cancels
// the current term, so every step is a linear merge.
ModElem mod_normal_form(const Ring& r, ModElem v, std::span<const ModElem> basis,
                        uint32_t reduce_limit) {
    const auto& f = *r->field;
    std::vector<ModTerm> remainder;
    size_t off = 0;
    while (off < v.t.size()) {
        const ModTerm lt = v.t[off];
        const ModElem* red = nullptr;
        if (lt.comp < reduce_limit) {
            for (const auto& g : basis) {
                if (g.is_zero()) continue;
                const ModTerm& lg = g.lead();
                if (lg.comp == lt.comp && mono_divides(lg.m, lt.m)) {
                    red = &g;
                    break;
                }
            }
        }
        if (!red) {
            remainder.push_back(lt);
            ++off;
            continue;
        }
        const ModTerm& lg = red->lead();
        // subtract q * red; the leads cancel, so drop them on both sides
        ModElem tail{{red->t.begin() + 1, red->t.end()}};
        v = mod_sub_times_from(r, v, off + 1, f.div(lt.c, lg.c), mono_div(lt.m, lg.m), tail);
        off = 0;
    }
    return {std::move(remainder)};
}

// Buchberger for submodules; deterministic pair selection by
// (lcm degree + component shift, i, j).  No product criterion (not valid for
// modules); the chain criterion applies with matching components.
std::vector<ModElem> module_buchberger(const Ring& r, std::vector<ModElem> gens,
                                       const std::vector<int>& shifts) {
    const auto& f = *r->field;
    std::vector<ModElem> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(mod_scaled(r, g, f.inv(g.lead().c)));
    if (basis.empty()) return basis;

    struct Pair {
        size_t i, j;
        Monomial lcm;
        int deg;
    };
    std::vector<Pair> pending;
    std::set<std::pair<size_t, size_t>> done;
    auto push_pairs = [&](size_t n) {
        for (size_t i = 0; i < n; ++i) {
            if (basis[i].lead().comp != basis[n].lead().comp) continue;
            Monomial l = mono_lcm(basis[i].lead().m, basis[n].lead().m);
            pending.push_back({i, n, l, (int)l.deg + shifts[basis[n].lead().comp]});
        }
    };
    for (size_t j = 1; j < basis.size(); ++j) push_pairs(j);

    while (!pending.empty()) {
        auto it = std::min_element(pending.begin(), pending.end(), [](const Pair& a, const Pair& b) {
            if (a.deg != b.deg) return a.deg < b.deg;
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        });
        Pair pr = *it;
        pending.erase(it);
        done.insert({pr.i, pr.j});

        const ModElem &gi = basis[pr.i], &gj = basis[pr.j];
        bool chained = false;
        for (size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            const ModTerm& lk = basis[k].lead();
            if (lk.comp != gi.lead().comp || !mono_divides(lk.m, pr.lcm)) continue;
            auto k1 = std::minmax(pr.i, k), k2 = std::minmax(pr.j, k);
            if (done.count({k1.first, k1.second}) && done.count({k2.first, k2.second}))
                chained = true;
        }
        if (chained) continue;

        ModElem s = mod_sub_times(r, mod_sub_times(r, ModElem{}, f.neg(1),
                                                   mono_div(pr.lcm, gi.lead().m), gi),
                                  1, mono_div(pr.lcm, gj.lead().m), gj);
        ModElem nf = mod_normal_form(r, s, basis, (uint32_t)shifts.size());
        if (nf.is_zero()) continue;
        basis.push_back(mod_scaled(r, nf, f.inv(nf.lead().c)));
        push_pairs(basis.size() - 1);
    }
    return basis;
}

// minimal generating subset of homogeneous module elements (graded Nakayama:
// greedy over degree-sorted candidates, membership against the chosen ones)
std::vector<ModElem> minimal_generators(const Ring& r, std::vector<ModElem> cands,
                                        const std::vector<int>& shifts) {
    std::stable_sort(cands.begin(), cands.end(), [&](const ModElem& a, const ModElem& b) {
        return mod_degree(a, shifts) < mod_degree(b, shifts);
    });
    std::vector<ModElem> chosen, gb;
    for (auto& c : cands) {
        if (c.is_zero()) continue;
        if (!gb.empty() && mod_normal_form(r, c, gb, (uint32_t)shifts.size()).is_zero()) continue;
        chosen.push_back(c);
        gb = module_buchberger(r, chosen, shifts);
    }
    return chosen;
}

// columns of a graded map as module elements over the target
std::vector<ModElem> columns_of(const GradedMap& m) {
    std::vector<ModElem> cols;
    for (size_t c = 0; c < m.source().rank(); ++c) {
        std::vector<ModTerm> terms;
        for (size_t r = 0; r < m.target().rank(); ++r)
            for (const auto& t : m.at(r, c).terms()) terms.push_back({(uint32_t)r, t.m, t.c});
        cols.push_back(mod_normalize(m.ring(), std::move(terms)));
    }
    return cols;
}

GradedMap map_from_columns(const Ring& r, const GradedFreeModule& target,
                           const std::vector<ModElem>& cols, const std::vector<int>& shifts) {
    GradedFreeModule source;
    for (const auto& c : cols) source.degrees.push_back(mod_degree(c, shifts));
    std::vector<Polynomial> entries(target.rank() * cols.size(), Polynomial());
    for (size_t c = 0; c < cols.size(); ++c) {
        std::vector<std::vector<Term>> per(target.rank());
        for (const auto& t : cols[c].t) per[t.comp].push_back({t.m, t.c});
        for (size_t row = 0; row < target.rank(); ++row)
            entries[row * cols.size() + c] = Polynomial(r, std::move(per[row]));
    }
    return GradedMap(r, target, std::move(source), std::move(entries));
}

// graph generators (col_c, e_c) in F_target (+) F_source
std::vector<ModElem> graph_generators(const GradedMap& m) {
    std::vector<ModElem> gens;
    size_t tr = m.target().rank();
    for (size_t c = 0; c < m.source().rank(); ++c) {
        std::vector<ModTerm> terms;
        for (size_t r = 0; r < tr; ++r)
            for (const auto& t : m.at(r, c).terms()) terms.push_back({(uint32_t)r, t.m, t.c});
        terms.push_back({(uint32_t)(tr + c), Monomial::one(), 1});
        gens.push_back(mod_normalize(m.ring(), std::move(terms)));
    }
    return gens;
}

std::vector<int> graph_shifts(const GradedMap& m) {
    std::vector<int> shifts = m.target().degrees;
    shifts.insert(shifts.end(), m.source().degrees.begin(), m.source().degrees.end());
    return shifts;
}

} // namespace

GradedMap::GradedMap(Ring r, GradedFreeModule target, GradedFreeModule source,
                     std::vector<Polynomial> entries)
    : r_(std::move(r)), target_(std::move(target)), source_(std::move(source)),
      a_(std::move(entries)) {
    require(a_.size() == target_.rank() * source_.rank(), Err::DimensionMismatch,
            "graded map entry count");
    for (size_t i = 0; i < target_.rank(); ++i)
        for (size_t j = 0; j < source_.rank(); ++j) {
            const Polynomial& e = at(i, j);
            if (e.is_zero()) continue;
            require(e.is_homogeneous() &&
                        e.degree() == source_.degrees[j] - target_.degrees[i],
                    Err::NonHomogeneous, "graded map entry with wrong degree");
        }
}

bool GradedMap::is_zero() const {
    for (const auto& e : a_)
        if (!e.is_zero()) return false;
    return true;
}

GradedMap compose(const GradedMap& a, const GradedMap& b) {
    require(a.source() == b.target(), Err::DimensionMismatch, "compose: shape mismatch");
    const Ring& r = a.ring();
    std::vector<Polynomial> entries(a.target().rank() * b.source().rank());
    for (size_t i = 0; i < a.target().rank(); ++i)
        for (size_t j = 0; j < b.source().rank(); ++j) {
            Polynomial acc(r);
            for (size_t k = 0; k < a.source().rank(); ++k) acc = acc + a.at(i, k) * b.at(k, j);
            entries[i * b.source().rank() + j] = std::move(acc);
        }
    return GradedMap(r, a.target(), b.source(), std::move(entries));
}

GradedMap syzygy_step(const GradedMap& m) {
    const Ring& r = m.ring();
    auto gens = graph_generators(m);
    auto shifts = graph_shifts(m);
    auto gb = module_buchberger(r, gens, shifts);

    size_t tr = m.target().rank();
    std::vector<ModElem> syz;
    for (const auto& g : gb) {
        if (g.is_zero() || g.lead().comp < tr) continue;
        // entirely within the source block: a syzygy; shift components down
        std::vector<ModTerm> t;
        for (const auto& x : g.t) t.push_back({x.comp - (uint32_t)tr, x.m, x.c});
        syz.push_back({std::move(t)});
    }
    auto minimal = minimal_generators(r, std::move(syz), m.source().degrees);
    return map_from_columns(r, m.source(), minimal, m.source().degrees);
}

Complex minimal_free_resolution(const Ideal& ideal, int max_length) {
    const Ring& r = ideal.ring();
    if (max_length < 0) max_length = (int)r->nvars;
    const auto& f = *r->field;

    // minimal generators of the ideal itself
    std::vector<ModElem> gens;
    for (const auto& g : ideal.gens()) {
        require(g.is_homogeneous(), Err::NonHomogeneous, "resolution needs a homogeneous ideal");
        if (g.is_zero()) continue;
        std::vector<ModTerm> t;
        for (const auto& tm : g.terms()) t.push_back({0, tm.m, tm.c});
        gens.push_back(mod_normalize(r, std::move(t)));
    }
    require(!gens.empty(), Err::DivisionByZero, "resolution of the unit/zero quotient");
    for (auto& g : gens) {
        bool is_unit = g.lead().m.deg == 0;
        require(!is_unit, Err::WrongShape, "resolution of the unit ideal");
        g = mod_scaled(r, g, f.inv(g.lead().c));
    }
    std::vector<int> shift0{0};
    auto minimal = minimal_generators(r, std::move(gens), shift0);

    Complex c;
    c.ring = r;
    c.augmentation = ideal;
    c.modules.push_back({{0}});
    GradedMap d1 = map_from_columns(r, c.modules[0], minimal, shift0);
    c.modules.push_back(d1.source());
    c.maps.push_back(std::move(d1));

    while ((int)c.maps.size() < max_length) {
        GradedMap next = syzygy_step(c.maps.back());
        if (next.source().rank() == 0) break;
        c.modules.push_back(next.source());
        c.maps.push_back(std::move(next));
    }
    minimize_complex(c);
    return c;
}

void minimize_complex(Complex& c) {
    const Ring& r = c.ring;
    const auto& f = *r->field;
    bool again = true;
    while (again) {
        again = false;
        for (size_t mi = 0; mi < c.maps.size() && !again; ++mi) {
            GradedMap& d = c.maps[mi];
            size_t tr = d.target().rank(), sr = d.source().rank();
            for (size_t row = 0; row < tr && !again; ++row)
                for (size_t col = 0; col < sr && !again; ++col) {
                    const Polynomial& e = d.at(row, col);
                    if (e.is_zero() || e.degree() != 0) continue;
                    again = true;
                    uint64_t u = e.terms()[0].c;
                    uint64_t ui = f.inv(u);

                    // Schur complement on d, deleting (row, col)
                    GradedFreeModule nt, ns;
                    for (size_t i = 0; i < tr; ++i)
                        if (i != row) nt.degrees.push_back(d.target().degrees[i]);
                    for (size_t j = 0; j < sr; ++j)
                        if (j != col) ns.degrees.push_back(d.source().degrees[j]);
                    std::vector<Polynomial> na(nt.rank() * ns.rank());
                    {
                        size_t ri = 0;
                        for (size_t i = 0; i < tr; ++i) {
                            if (i == row) continue;
                            size_t cj = 0;
                            for (size_t j = 0; j < sr; ++j) {
                                if (j == col) continue;
                                Polynomial v = d.at(i, j) -
                                               d.at(i, col).scaled(ui) * d.at(row, j);
                                na[ri * ns.rank() + cj] = std::move(v);
                                ++cj;
                            }
                            ++ri;
                        }
                    }

                    // previous map: delete column `row`
                    if (mi > 0) {
                        GradedMap& prev = c.maps[mi - 1];
                        GradedFreeModule psrc = nt;
                        std::vector<Polynomial> pa(prev.target().rank() * psrc.rank());
                        size_t cj = 0;
                        for (size_t j = 0; j < tr; ++j) {
                            if (j == row) continue;
                            for (size_t i = 0; i < prev.target().rank(); ++i)
                                pa[i * psrc.rank() + cj] = prev.at(i, j);
                            ++cj;
                        }
                        prev = GradedMap(r, prev.target(), psrc, std::move(pa));
                    }

                    // next map: fold the column operations into row `col`, then
                    // delete that row (it must have become zero)
                    if (mi + 1 < c.maps.size()) {
                        GradedMap& nxt = c.maps[mi + 1];
                        size_t nsr = nxt.source().rank();
                        std::vector<Polynomial> xa(ns.rank() * nsr);
                        // check row col vanishes after the update
                        for (size_t cc = 0; cc < nsr; ++cc) {
                            Polynomial acc = nxt.at(col, cc);
                            for (size_t j = 0; j < sr; ++j) {
                                if (j == col) continue;
                                // lambda_j = d(row, j) / u
                                acc = acc + nxt.at(j, cc) * d.at(row, j).scaled(ui);
                            }
                            require(acc.is_zero(), Err::NonMinimalComplex,
                                    "cancellation left a nonzero composite");
                        }
                        size_t ri = 0;
                        for (size_t j = 0; j < sr; ++j) {
                            if (j == col) continue;
                            for (size_t cc = 0; cc < nsr; ++cc)
                                xa[ri * nsr + cc] = nxt.at(j, cc);
                            ++ri;
                        }
                        nxt = GradedMap(r, ns, nxt.source(), std::move(xa));
                    }

                    d = GradedMap(r, std::move(nt), std::move(ns), std::move(na));
                    c.modules[mi] = d.target();
                    c.modules[mi + 1] = d.source();
                    if (mi + 1 < c.maps.size()) c.modules[mi + 1] = c.maps[mi + 1].target();
                }
        }
        // drop empty tail modules
        while (!c.maps.empty() && c.maps.back().source().rank() == 0) {
            c.maps.pop_back();
            c.modules.pop_back();
        }
    }
}

BettiTable betti_table(const Complex& c) {
    for (const auto& m : c.maps)
        for (size_t i = 0; i < m.target().rank(); ++i)
            for (size_t j = 0; j < m.source().rank(); ++j)
                require(m.at(i, j).is_zero() || m.at(i, j).degree() > 0, Err::NonMinimalComplex,
                        "unit entry in a differential");
    BettiTable t;
    for (size_t i = 0; i < c.modules.size(); ++i) {
        std::vector<int> degs = c.modules[i].degrees;
        std::sort(degs.begin(), degs.end());
        for (size_t a = 0; a < degs.size();) {
            size_t b = a;
            while (b < degs.size() && degs[b] == degs[a]) ++b;
            t.entries.push_back({(int)i, degs[a], (long)(b - a)});
            a = b;
        }
    }
    std::sort(t.entries.begin(), t.entries.end(), [](const BettiEntry& x, const BettiEntry& y) {
        return std::tie(x.i, x.d) < std::tie(y.i, y.d);
    });
    return t;
}

std::vector<GradedMap> lift_chain_map(const Complex& target, const Complex& source,
                                      const GradedMap& phi0) {
    const Ring& r = target.ring;
    require(phi0.target() == target.modules[0] && phi0.source() == source.modules[0],
            Err::WrongShape, "phi0 must map the augmentation degrees");
    std::vector<GradedMap> phi{phi0};

    size_t steps = std::min(target.length(), source.length());
    for (size_t i = 1; i <= steps; ++i) {
        const GradedMap& d = target.maps[i - 1];  // F_i -> F_{i-1}
        const GradedMap& ds = source.maps[i - 1]; // F'_i -> F'_{i-1}
        const GradedMap& prev = phi[i - 1];       // F'_{i-1} -> F_{i-1}

        auto gb = module_buchberger(r, graph_generators(d), graph_shifts(d));
        size_t tr = d.target().rank();

        std::vector<ModElem> cols;
        for (size_t c = 0; c < ds.source().rank(); ++c) {
            // v = prev * (column c of ds), over F_{i-1} of the target
            std::vector<ModTerm> terms;
            for (size_t row = 0; row < prev.target().rank(); ++row) {
                Polynomial acc(r);
                for (size_t k = 0; k < prev.source().rank(); ++k)
                    acc = acc + prev.at(row, k) * ds.at(k, c);
                for (const auto& t : acc.terms()) terms.push_back({(uint32_t)row, t.m, t.c});
            }
            ModElem v = mod_normalize(r, std::move(terms));
            // divide by the graph basis, reducing only target-block terms
            ModElem rem = mod_normal_form(r, v, gb, (uint32_t)tr);
            std::vector<ModTerm> x;
            for (const auto& t : rem.t) {
                require(t.comp >= tr, Err::NotLiftable,
                        "column not in the image of the differential");
                x.push_back({t.comp - (uint32_t)tr, t.m, r->field->neg(t.c)});
            }
            cols.push_back(mod_normalize(r, std::move(x)));
        }
        // assemble phi_i: F'_i -> F_i
        std::vector<Polynomial> entries(d.source().rank() * ds.source().rank(), Polynomial());
        for (size_t c = 0; c < cols.size(); ++c) {
            std::vector<std::vector<Term>> per(d.source().rank());
            for (const auto& t : cols[c].t) per[t.comp].push_back({t.m, t.c});
            for (size_t row = 0; row < d.source().rank(); ++row)
                entries[row * cols.size() + c] = Polynomial(r, std::move(per[row]));
        }
        phi.push_back(GradedMap(r, d.source(), ds.source(), std::move(entries)));
    }
    return phi;
}

} // namespace lagrangia
