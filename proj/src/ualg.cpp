#include "uqa/ualg.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace uqa {

int Diagram::degree() const {
    int N = 0;
    for (int l : xlen) N += l;
    return N;
}

std::vector<AssocWord> Diagram::xwords() const {
    std::vector<AssocWord> out(xlen.size());
    int next = 1;
    for (size_t s = 0; s < xlen.size(); ++s)
        for (int k = 0; k < xlen[s]; ++k) out[s].push_back(next++);
    return out;
}

std::vector<AssocWord> Diagram::ywords() const {
    std::vector<AssocWord> out(ylen.size());
    size_t p = 0;
    for (size_t s = 0; s < ylen.size(); ++s)
        for (int k = 0; k < ylen[s]; ++k) out[s].push_back(ytags[p++]);
    return out;
}

std::string Diagram::str() const {
    std::ostringstream os;
    auto dump = [&os](const std::vector<AssocWord>& ws) {
        for (size_t s = 0; s < ws.size(); ++s) {
            if (s) os << '|';
            for (size_t k = 0; k < ws[s].size(); ++k) {
                if (k) os << ',';
                os << ws[s][k];
            }
        }
    };
    os << "x[";
    dump(xwords());
    os << "]y[";
    dump(ywords());
    os << ']';
    return os.str();
}

Diagram make_diagram(const std::vector<AssocWord>& xw, const std::vector<AssocWord>& yw) {
    if (xw.size() != yw.size()) throw std::invalid_argument("make_diagram: slot mismatch");
    std::map<Tag, Tag> relabel;
    Tag next = 1;
    for (const auto& w : xw)
        for (Tag t : w) {
            if (!relabel.emplace(t, next).second)
                throw std::invalid_argument("make_diagram: repeated x tag");
            ++next;
        }
    Diagram d;
    d.xlen.reserve(xw.size());
    d.ylen.reserve(yw.size());
    size_t ycount = 0;
    for (const auto& w : xw) d.xlen.push_back(static_cast<int>(w.size()));
    for (const auto& w : yw) {
        d.ylen.push_back(static_cast<int>(w.size()));
        ycount += w.size();
    }
    if (ycount != relabel.size()) throw std::invalid_argument("make_diagram: x/y tag mismatch");
    d.ytags.reserve(ycount);
    for (const auto& w : yw)
        for (Tag t : w) {
            auto it = relabel.find(t);
            if (it == relabel.end()) throw std::invalid_argument("make_diagram: unmatched y tag");
            d.ytags.push_back(it->second);
        }
    return d;
}

UElement u_zero(int n) { return UElement{n, {}}; }

UElement u_one(int n) {
    UElement e{n, {}};
    Diagram d;
    d.xlen.assign(n, 0);
    d.ylen.assign(n, 0);
    e.terms.emplace(std::move(d), Rat(1));
    return e;
}

void u_add_term(UElement& acc, const Diagram& d, const Rat& c) {
    if (c.is_zero()) return;
    auto it = acc.terms.find(d);
    if (it == acc.terms.end()) acc.terms.emplace(d, c);
    else {
        it->second += c;
        if (it->second.is_zero()) acc.terms.erase(it);
    }
}

void u_add(UElement& acc, const UElement& e, const Rat& c) {
    if (acc.n != e.n) throw std::invalid_argument("u_add: slot mismatch");
    for (const auto& [d, v] : e.terms) u_add_term(acc, d, c * v);
}

UElement u_scale(const UElement& a, const Rat& c) {
    UElement out{a.n, {}};
    if (c.is_zero()) return out;
    for (const auto& [d, v] : a.terms) out.terms.emplace(d, c * v);
    return out;
}

UElement u_sub(const UElement& a, const UElement& b) {
    UElement out = a;
    u_add(out, b, Rat(-1));
    return out;
}

UElement u_component(const UElement& a, int deg) {
    UElement out{a.n, {}};
    for (const auto& [d, v] : a.terms)
        if (d.degree() == deg) out.terms.emplace(d, v);
    return out;
}

UElement make_r() {
    UElement e{2, {}};
    e.terms.emplace(make_diagram({{1}, {}}, {{}, {1}}), Rat(1));
    return e;
}

UElement make_r21() {
    UElement e{2, {}};
    e.terms.emplace(make_diagram({{}, {1}}, {{1}, {}}), Rat(1));
    return e;
}

UElement make_t() {
    UElement e = make_r();
    u_add(e, make_r21());
    return e;
}

UElement make_mr() {
    UElement e{1, {}};
    e.terms.emplace(make_diagram({{1}}, {{1}}), Rat(1));
    return e;
}

UElement make_t_ij(int n, int i, int j) {
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw std::invalid_argument("make_t_ij: bad indices");
    UElement e{n, {}};
    std::vector<AssocWord> xw(n), yw(n);
    xw[i - 1] = {1};
    yw[j - 1] = {1};
    e.terms.emplace(make_diagram(xw, yw), Rat(1));
    xw.assign(n, {});
    yw.assign(n, {});
    xw[j - 1] = {1};
    yw[i - 1] = {1};
    u_add_term(e, make_diagram(xw, yw), Rat(1));
    return e;
}

// ---------------------------------------------------------------------------
// Normal-ordering engine.
//
// A work state is a slotted list of letters; a letter is a pure-side Lie
// monomial over global tags. Invariant: each tag has exactly one x-leaf and
// one y-leaf across all letters. An ill-ordered pair is a y-letter standing
// immediately left of an x-letter in one slot. Rewriting replaces the pair
// by the swap plus its bracket; the leaf-leaf bracket removes one letter and
// grafts the removed tag's partner leaf:
//   [y_j, x_i] = -(keep y_j, x-leaf j -> [x_j, x_i])
//                -(keep x_i, y-leaf i -> [y_j, y_i]).
// Composite letters reduce by Jacobi before reaching the leaf rule.
// ---------------------------------------------------------------------------

namespace {

struct WorkLetter {
    bool y;
    LieMono m;
};

struct Work {
    std::vector<std::vector<WorkLetter>> slot;
    Rat c;
};

bool graft_leaf(Work& w, bool yside, Tag host, const LieMono& replacement) {
    for (auto& sl : w.slot)
        for (auto& let : sl) {
            if (let.y != yside) continue;
            if (let.m.graft(host, replacement)) return true;
        }
    return false;
}

void eval_pair(Work w, int s, int pos, std::vector<Work>& out);

// [Q, P] with Q a y-monomial and P an x-monomial; both are virtual (already
// removed from base.slot[s]); results place one letter at position pos.
void eval_mixed(const Work& base, int s, int pos, const WorkLetter& Q, const WorkLetter& P,
                std::vector<Work>& out) {
    if (Q.m.is_leaf() && P.m.is_leaf()) {
        Tag j = Q.m.leaf_tag(), i = P.m.leaf_tag();
        if (i == j)
            throw std::logic_error("normal ordering: bracketed pair shares a tag");
        LieMono grafted = LieMono::node(LieMono::leaf(j), LieMono::leaf(i));
        {
            Work w1 = base;
            w1.slot[s].insert(w1.slot[s].begin() + pos, Q);
            if (!graft_leaf(w1, false, j, grafted))
                throw std::logic_error("normal ordering: missing x partner leaf");
            w1.c = -w1.c;
            out.push_back(std::move(w1));
        }
        {
            Work w2 = base;
            w2.slot[s].insert(w2.slot[s].begin() + pos, P);
            if (!graft_leaf(w2, true, i, grafted))
                throw std::logic_error("normal ordering: missing y partner leaf");
            w2.c = -w2.c;
            out.push_back(std::move(w2));
        }
        return;
    }
    if (!P.m.is_leaf()) {
        auto [p1, p2] = P.m.children();
        // [Q,[P1,P2]] = [[Q,P1],P2] + [P1,[Q,P2]]
        {
            Work b = base;
            b.slot[s].insert(b.slot[s].begin() + pos, WorkLetter{false, p2});
            std::vector<Work> inner;
            eval_mixed(b, s, pos, Q, WorkLetter{false, p1}, inner);
            for (auto& t : inner) eval_pair(std::move(t), s, pos, out);
        }
        {
            Work b = base;
            b.slot[s].insert(b.slot[s].begin() + pos, WorkLetter{false, p1});
            std::vector<Work> inner;
            eval_mixed(b, s, pos + 1, Q, WorkLetter{false, p2}, inner);
            for (auto& t : inner) eval_pair(std::move(t), s, pos, out);
        }
        return;
    }
    // Q composite: [[Q1,Q2],P] = [Q1,[Q2,P]] - [Q2,[Q1,P]]
    auto [q1, q2] = Q.m.children();
    {
        Work b = base;
        b.slot[s].insert(b.slot[s].begin() + pos, WorkLetter{true, q1});
        std::vector<Work> inner;
        eval_mixed(b, s, pos + 1, WorkLetter{true, q2}, P, inner);
        for (auto& t : inner) eval_pair(std::move(t), s, pos, out);
    }
    {
        Work b = base;
        b.slot[s].insert(b.slot[s].begin() + pos, WorkLetter{true, q2});
        std::vector<Work> inner;
        eval_mixed(b, s, pos + 1, WorkLetter{true, q1}, P, inner);
        for (auto& t : inner) {
            t.c = -t.c;
            eval_pair(std::move(t), s, pos, out);
        }
    }
}

// Lie bracket of the two concrete letters at (s,pos),(s,pos+1).
void eval_pair(Work w, int s, int pos, std::vector<Work>& out) {
    WorkLetter A = w.slot[s][pos];
    WorkLetter B = w.slot[s][pos + 1];
    w.slot[s].erase(w.slot[s].begin() + pos, w.slot[s].begin() + pos + 2);
    if (A.y == B.y) {
        w.slot[s].insert(w.slot[s].begin() + pos, WorkLetter{A.y, LieMono::node(A.m, B.m)});
        out.push_back(std::move(w));
        return;
    }
    if (A.y) {
        eval_mixed(w, s, pos, A, B, out);
    } else {
        size_t first = out.size();
        eval_mixed(w, s, pos, B, A, out);
        for (size_t k = first; k < out.size(); ++k) out[k].c = -out[k].c;
    }
}

void expand_side(const std::vector<WorkLetter>& letters, bool yside,
                 std::vector<std::pair<AssocWord, Rat>>& out) {
    out.clear();
    out.emplace_back(AssocWord{}, Rat(1));
    for (const auto& let : letters) {
        if (let.y != yside) continue;
        WordMap e = expand_word(let.m);
        std::vector<std::pair<AssocWord, Rat>> next;
        next.reserve(out.size() * e.size());
        for (const auto& [w0, c0] : out)
            for (const auto& [w1, c1] : e) {
                AssocWord w = w0;
                w.insert(w.end(), w1.begin(), w1.end());
                next.emplace_back(std::move(w), c0 * c1);
            }
        out = std::move(next);
    }
}

void expand_work(const Work& w, UElement& acc) {
    const int n = static_cast<int>(w.slot.size());
    std::vector<std::vector<std::pair<AssocWord, Rat>>> xs(n), ys(n);
    for (int s = 0; s < n; ++s) {
        expand_side(w.slot[s], false, xs[s]);
        expand_side(w.slot[s], true, ys[s]);
    }
    // odometer over all per-slot choices, both sides
    std::vector<size_t> ix(n, 0), iy(n, 0);
    while (true) {
        Rat c = w.c;
        std::vector<AssocWord> xw(n), yw(n);
        for (int s = 0; s < n; ++s) {
            xw[s] = xs[s][ix[s]].first;
            yw[s] = ys[s][iy[s]].first;
            c *= xs[s][ix[s]].second * ys[s][iy[s]].second;
        }
        u_add_term(acc, make_diagram(xw, yw), c);
        int p = 0;
        for (; p < 2 * n; ++p) {
            auto& idx = p < n ? ix[p] : iy[p - n];
            size_t lim = p < n ? xs[p].size() : ys[p - n].size();
            if (++idx < lim) break;
            idx = 0;
        }
        if (p == 2 * n) break;
    }
}

void normalize_work(Work start, UElement& acc) {
    std::vector<Work> stack;
    stack.push_back(std::move(start));
    while (!stack.empty()) {
        Work w = std::move(stack.back());
        stack.pop_back();
        int fs = -1, fp = -1;
        for (int s = 0; s < static_cast<int>(w.slot.size()) && fs < 0; ++s)
            for (int p = 0; p + 1 < static_cast<int>(w.slot[s].size()); ++p)
                if (w.slot[s][p].y && !w.slot[s][p + 1].y) {
                    fs = s;
                    fp = p;
                    break;
                }
        if (fs < 0) {
            expand_work(w, acc);
            continue;
        }
        Work sw = w;
        std::swap(sw.slot[fs][fp], sw.slot[fs][fp + 1]);
        stack.push_back(std::move(sw));
        eval_pair(std::move(w), fs, fp, stack);
    }
}

void product_into(const Diagram& da, const Diagram& db, const Rat& c, UElement& acc) {
    const int n = da.slots();
    Work w;
    w.c = c;
    w.slot.resize(n);
    const int offset = da.degree();
    auto dax = da.xwords(), day = da.ywords(), dbx = db.xwords(), dby = db.ywords();
    for (int s = 0; s < n; ++s) {
        for (Tag t : dax[s]) w.slot[s].push_back(WorkLetter{false, LieMono::leaf(t)});
        for (Tag t : day[s]) w.slot[s].push_back(WorkLetter{true, LieMono::leaf(t)});
        for (Tag t : dbx[s]) w.slot[s].push_back(WorkLetter{false, LieMono::leaf(t + offset)});
        for (Tag t : dby[s]) w.slot[s].push_back(WorkLetter{true, LieMono::leaf(t + offset)});
    }
    normalize_work(std::move(w), acc);
}

UElement u_product_raw(const UElement& a, const UElement& b) {
    if (a.n != b.n) throw std::invalid_argument("u_product: slot mismatch");
    UElement out{a.n, {}};
    for (const auto& [da, ca] : a.terms)
        for (const auto& [db, cb] : b.terms) product_into(da, db, ca * cb, out);
    return out;
}

// One-time convention check: the worked two-generator product identity and
// the classical Yang-Baxter rearrangement pin the graft signs.
void engine_selfcheck() {
    const UElement r = make_r();
    auto rij = [&](int i, int j) {
        std::vector<AssocWord> xw(3), yw(3);
        xw[i - 1] = {1};
        yw[j - 1] = {1};
        UElement e{3, {}};
        e.terms.emplace(make_diagram(xw, yw), Rat(1));
        return e;
    };
    auto comm = [](const UElement& x, const UElement& y) {
        return u_sub(u_product_raw(x, y), u_product_raw(y, x));
    };
    // [r12,r13] + [r12,r23] + [r13,r23] = 0
    UElement cybe = comm(rij(1, 2), rij(1, 3));
    u_add(cybe, comm(rij(1, 2), rij(2, 3)));
    u_add(cybe, comm(rij(1, 3), rij(2, 3)));
    if (!cybe.is_zero())
        throw std::logic_error("normal-ordering conventions broken: CYBE rearrangement failed");

    UElement lhs = u_product_raw(make_t_ij(3, 2, 3), make_t_ij(3, 1, 3));
    UElement rhs = u_product_raw(rij(2, 3), rij(1, 3));
    u_add(rhs, u_product_raw(rij(3, 2), rij(1, 3)));
    u_add(rhs, u_product_raw(rij(3, 1), rij(2, 3)));
    u_add(rhs, comm(rij(2, 1), rij(2, 3)));
    u_add(rhs, comm(rij(3, 1), rij(2, 1)));
    u_add(rhs, u_product_raw(rij(3, 2), rij(3, 1)));
    if (!(u_sub(lhs, rhs).is_zero()))
        throw std::logic_error("normal-ordering conventions broken: worked product identity failed");
}

std::once_flag engine_checked;

} // namespace

UElement u_product(const UElement& a, const UElement& b) {
    std::call_once(engine_checked, engine_selfcheck);
    return u_product_raw(a, b);
}

UElement u_insert(const UElement& a, const std::vector<std::vector<int>>& blocks, int m) {
    if (static_cast<int>(blocks.size()) != a.n)
        throw std::invalid_argument("u_insert: block count != slots");
    std::vector<bool> used(m + 1, false);
    for (const auto& blk : blocks)
        for (int v : blk) {
            if (v < 1 || v > m || used[v])
                throw std::invalid_argument("u_insert: blocks not disjoint in range");
            used[v] = true;
        }
    UElement out{m, {}};
    for (const auto& [d, c] : a.terms) {
        auto dx = d.xwords(), dy = d.ywords();
        // flatten letters with their source-slot block
        struct Letter {
            Tag t;
            const std::vector<int>* blk;
        };
        std::vector<Letter> lx, ly;
        bool dead = false;
        for (int s = 0; s < a.n; ++s) {
            if (blocks[s].empty() && (!dx[s].empty() || !dy[s].empty())) dead = true;
            for (Tag t : dx[s]) lx.push_back({t, &blocks[s]});
            for (Tag t : dy[s]) ly.push_back({t, &blocks[s]});
        }
        if (dead) continue;
        std::vector<size_t> cx(lx.size(), 0), cy(ly.size(), 0);
        while (true) {
            std::vector<AssocWord> xw(m), yw(m);
            for (size_t k = 0; k < lx.size(); ++k) xw[(*lx[k].blk)[cx[k]] - 1].push_back(lx[k].t);
            for (size_t k = 0; k < ly.size(); ++k) yw[(*ly[k].blk)[cy[k]] - 1].push_back(ly[k].t);
            u_add_term(out, make_diagram(xw, yw), c);
            size_t p = 0;
            const size_t total = lx.size() + ly.size();
            for (; p < total; ++p) {
                auto& idx = p < lx.size() ? cx[p] : cy[p - lx.size()];
                size_t lim = p < lx.size() ? lx[p].blk->size() : ly[p - lx.size()].blk->size();
                if (++idx < lim) break;
                idx = 0;
            }
            if (p == total) break;
        }
    }
    return out;
}

UElement partial_counit(const UElement& a, int slot) {
    if (slot < 1 || slot > a.n) throw std::invalid_argument("partial_counit: bad slot");
    UElement out{a.n - 1, {}};
    for (const auto& [d, c] : a.terms) {
        if (d.xlen[slot - 1] != 0 || d.ylen[slot - 1] != 0) continue;
        auto xw = d.xwords();
        auto yw = d.ywords();
        xw.erase(xw.begin() + (slot - 1));
        yw.erase(yw.begin() + (slot - 1));
        u_add_term(out, make_diagram(xw, yw), c);
    }
    return out;
}

UElement u_slot_permute(const UElement& a, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != a.n)
        throw std::invalid_argument("u_slot_permute: bad permutation");
    UElement out{a.n, {}};
    for (const auto& [d, c] : a.terms) {
        auto xw = d.xwords(), yw = d.ywords();
        std::vector<AssocWord> px(a.n), py(a.n);
        for (int s = 0; s < a.n; ++s) {
            px[sigma[s] - 1] = xw[s];
            py[sigma[s] - 1] = yw[s];
        }
        u_add_term(out, make_diagram(px, py), c);
    }
    return out;
}

namespace {
void signed_permutations(int n, std::vector<std::pair<std::vector<int>, int>>& out) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        out.emplace_back(p, inv % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(p.begin(), p.end()));
}
} // namespace

UElement u_alt(const UElement& a) {
    std::vector<std::pair<std::vector<int>, int>> perms;
    signed_permutations(a.n, perms);
    UElement out{a.n, {}};
    Rat f = inv(factorial(a.n));
    for (const auto& [p, sgn] : perms) u_add(out, u_slot_permute(a, p), f * Rat(sgn));
    return out;
}

UElement u_alt_slots(const UElement& a, const std::vector<int>& slots) {
    const int k = static_cast<int>(slots.size());
    std::vector<std::pair<std::vector<int>, int>> perms;
    signed_permutations(k, perms);
    UElement out{a.n, {}};
    Rat f = inv(factorial(k));
    for (const auto& [p, sgn] : perms) {
        std::vector<int> sigma(a.n);
        for (int s = 1; s <= a.n; ++s) sigma[s - 1] = s;
        for (int i = 0; i < k; ++i) sigma[slots[i] - 1] = slots[p[i] - 1];
        u_add(out, u_slot_permute(a, sigma), f * Rat(sgn));
    }
    return out;
}

UElement u_commutator(const UElement& a, const UElement& b) {
    return u_sub(u_product(a, b), u_product(b, a));
}

std::pair<std::vector<int>, std::vector<int>> ab_degrees(const Diagram& d) {
    return {d.xlen, d.ylen};
}

bool SlotPattern::matches(const Diagram& d) const {
    if (static_cast<int>(slot.size()) != d.slots()) return false;
    for (size_t s = 0; s < slot.size(); ++s) {
        const Range& r = slot[s];
        int a = d.xlen[s], b = d.ylen[s];
        if (a < r.amin || (r.amax >= 0 && a > r.amax)) return false;
        if (b < r.bmin || (r.bmax >= 0 && b > r.bmax)) return false;
    }
    return true;
}

UElement project_component(const UElement& a, const SlotPattern& p) {
    if (static_cast<int>(p.slot.size()) != a.n)
        throw std::invalid_argument("project_component: pattern arity mismatch");
    UElement out{a.n, {}};
    for (const auto& [d, c] : a.terms)
        if (p.matches(d)) out.terms.emplace(d, c);
    return out;
}

namespace {
void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= total; ++k) {
        cur.push_back(k);
        compositions(total - k, parts - 1, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<Diagram> u_basis(int n, int N) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(N, n, cur, comps);
    std::vector<Diagram> out;
    std::vector<Tag> perm(N);
    for (int i = 0; i < N; ++i) perm[i] = i + 1;
    std::sort(perm.begin(), perm.end());
    for (const auto& xl : comps)
        for (const auto& yl : comps) {
            std::vector<Tag> p = perm;
            do {
                Diagram d;
                d.xlen = xl;
                d.ylen = yl;
                d.ytags = p;
                out.push_back(std::move(d));
            } while (std::next_permutation(p.begin(), p.end()));
        }
    std::sort(out.begin(), out.end());
    return out;
}

USeries USeries::one(int n, int order) {
    USeries s{n, order, {}};
    s.comp.assign(order + 1, u_zero(n));
    s.comp[0] = u_one(n);
    return s;
}

USeries USeries::from_element(const UElement& e, int order) {
    USeries s{e.n, order, {}};
    s.comp.assign(order + 1, u_zero(e.n));
    for (const auto& [d, c] : e.terms) {
        int deg = d.degree();
        if (deg <= order) s.comp[deg].terms.emplace(d, c);
    }
    return s;
}

USeries USeries::truncated(int neworder) const {
    USeries s{n, neworder, {}};
    s.comp.assign(neworder + 1, u_zero(n));
    for (int k = 0; k <= std::min(order, neworder); ++k) s.comp[k] = comp[k];
    return s;
}

USeries useries_add(const USeries& a, const USeries& b) {
    if (a.n != b.n || a.order != b.order) throw std::invalid_argument("useries_add: shape mismatch");
    USeries s = a;
    for (int k = 0; k <= s.order; ++k) u_add(s.comp[k], b.comp[k]);
    return s;
}

USeries useries_scale(const USeries& a, const Rat& c) {
    USeries s = a;
    for (auto& e : s.comp) e = u_scale(e, c);
    return s;
}

USeries useries_mul(const USeries& a, const USeries& b) {
    if (a.n != b.n || a.order != b.order) throw std::invalid_argument("useries_mul: shape mismatch");
    USeries s{a.n, a.order, {}};
    s.comp.assign(a.order + 1, u_zero(a.n));
    for (int i = 0; i <= a.order; ++i) {
        if (a.comp[i].is_zero()) continue;
        for (int j = 0; i + j <= a.order; ++j) {
            if (b.comp[j].is_zero()) continue;
            u_add(s.comp[i + j], u_product(a.comp[i], b.comp[j]));
        }
    }
    return s;
}

USeries useries_inverse(const USeries& s) {
    const UElement one = u_one(s.n);
    if (!(u_sub(s.comp[0], one).is_zero()))
        throw std::invalid_argument("useries_inverse: constant term must be 1");
    USeries inv = USeries::one(s.n, s.order);
    for (int k = 1; k <= s.order; ++k) {
        UElement acc = u_zero(s.n);
        for (int j = 1; j <= k; ++j) u_add(acc, u_product(s.comp[j], inv.comp[k - j]));
        inv.comp[k] = u_scale(acc, Rat(-1));
    }
    return inv;
}

USeries useries_exp(const USeries& s) {
    if (!s.comp[0].is_zero()) throw std::invalid_argument("useries_exp: constant term must be 0");
    USeries out = USeries::one(s.n, s.order);
    USeries pw = USeries::one(s.n, s.order);
    Rat fact(1);
    for (int k = 1; k <= s.order; ++k) {
        pw = useries_mul(pw, s);
        fact *= Rat(k);
        out = useries_add(out, useries_scale(pw, inv(fact)));
        if (useries_is_zero(pw)) break;
    }
    return out;
}

bool useries_is_zero(const USeries& s) {
    for (const auto& e : s.comp)
        if (!e.is_zero()) return false;
    return true;
}

USeries useries_insert(const USeries& s, const std::vector<std::vector<int>>& blocks, int m) {
    USeries out{m, s.order, {}};
    out.comp.assign(s.order + 1, u_zero(m));
    for (int k = 0; k <= s.order; ++k) out.comp[k] = u_insert(s.comp[k], blocks, m);
    return out;
}

USeries useries_slot_permute(const USeries& s, const std::vector<int>& sigma) {
    USeries out = s;
    for (auto& e : out.comp) e = u_slot_permute(e, sigma);
    return out;
}

UElement mu_embed(const ChordElement& c) {
    // fold products over each normal-form word, caching prefixes
    static std::map<std::pair<int, ChordWord>, UElement> cache;
    UElement out = u_zero(c.n);
    for (const auto& [w, v] : c.terms) {
        ChordWord prefix;
        const UElement* cur = nullptr;
        {
            auto key = std::make_pair(c.n, prefix);
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, u_one(c.n)).first;
            cur = &it->second;
        }
        for (int id : w) {
            prefix.push_back(id);
            auto key = std::make_pair(c.n, prefix);
            auto it = cache.find(key);
            if (it == cache.end()) {
                auto [i, j] = ChordGen::unpack(id);
                it = cache.emplace(key, u_product(*cur, make_t_ij(c.n, i, j))).first;
            }
            cur = &it->second;
        }
        u_add(out, *cur, v);
    }
    return out;
}

USeries mu_embed_series(const ChordSeries& s, int order) {
    USeries out{s.n, order, {}};
    out.comp.assign(order + 1, u_zero(s.n));
    for (int k = 0; k <= std::min(order, s.order); ++k) out.comp[k] = mu_embed(s.comp[k]);
    return out;
}

} // namespace uqa
