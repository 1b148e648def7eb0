#include "orbitlab/partitions.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace orbitlab {

namespace {

std::uint32_t all_positions(int n) { return n == 32 ? ~0u : (1u << n) - 1u; }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    Partition to_partition(int n) {
        std::vector<std::uint32_t> masks(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) masks[static_cast<std::size_t>(find(i))] |= 1u << i;
        std::erase(masks, 0u);
        return Partition::from_masks(n, std::move(masks));
    }
};

void require_same_degree(const Partition& p, const Partition& q, const char* op) {
    if (p.degree() != q.degree()) throw std::invalid_argument(std::string(op) + ": degree mismatch");
}

}  // namespace

void Partition::rebuild_index() {
    part_of_.assign(static_cast<std::size_t>(n_), -1);
    for (std::size_t j = 0; j < masks_.size(); ++j) {
        std::uint32_t m = masks_[j];
        while (m) {
            const int i = std::countr_zero(m);
            part_of_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(j);
            m &= m - 1;
        }
    }
}

Partition Partition::discrete(int n) {
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) masks[static_cast<std::size_t>(i)] = 1u << i;
    return from_masks(n, std::move(masks));
}

Partition Partition::single_part(int n) {
    return from_masks(n, {all_positions(n)});
}

Partition Partition::from_parts(int n, const std::vector<std::vector<int>>& parts) {
    std::vector<std::uint32_t> masks;
    masks.reserve(parts.size());
    for (const auto& part : parts) {
        std::uint32_t m = 0;
        for (int i : part) {
            if (i < 0 || i >= n) throw std::invalid_argument("Partition: position out of range");
            m |= 1u << i;
        }
        masks.push_back(m);
    }
    return from_masks(n, std::move(masks));
}

Partition Partition::from_masks(int n, std::vector<std::uint32_t> masks) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("Partition: degree out of range");
    std::uint32_t seen = 0;
    for (std::uint32_t m : masks) {
        if (m == 0) throw std::invalid_argument("Partition: empty part");
        if (m & seen) throw std::invalid_argument("Partition: parts overlap");
        seen |= m;
    }
    if (seen != all_positions(n)) throw std::invalid_argument("Partition: parts do not cover [n]");
    std::sort(masks.begin(), masks.end(),
              [](std::uint32_t a, std::uint32_t b) { return (a & (~a + 1)) < (b & (~b + 1)); });
    Partition p;
    p.n_ = n;
    p.masks_ = std::move(masks);
    p.rebuild_index();
    return p;
}

Partition Partition::zero_one_split(const BitString& a) {
    const std::uint32_t ones = a.bits();
    const std::uint32_t zeros = all_positions(a.dim()) & ~ones;
    std::vector<std::uint32_t> masks;
    if (zeros) masks.push_back(zeros);
    if (ones) masks.push_back(ones);
    return from_masks(a.dim(), std::move(masks));
}

Partition Partition::parse(int n, std::string_view text) {
    std::vector<std::vector<int>> parts;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '{') throw ParseError("partition: expected '{'");
        const std::size_t close = text.find('}', i);
        if (close == std::string_view::npos) throw ParseError("partition: missing '}'");
        std::vector<int> part;
        std::size_t j = i + 1;
        while (j < close) {
            std::size_t end = j;
            while (end < close && text[end] != ',') ++end;
            int value = 0;
            for (std::size_t k = j; k < end; ++k) {
                if (text[k] < '0' || text[k] > '9') throw ParseError("partition: expected a position number");
                value = value * 10 + (text[k] - '0');
            }
            part.push_back(value - 1);  // external form is 1-based
            j = end + 1;
        }
        parts.push_back(std::move(part));
        i = close + 1;
        if (i < text.size()) {
            if (text[i] != '|') throw ParseError("partition: expected '|' between parts");
            ++i;
        }
    }
    try {
        return from_parts(n, parts);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::vector<std::vector<int>> Partition::parts() const {
    std::vector<std::vector<int>> out;
    out.reserve(masks_.size());
    for (std::uint32_t m : masks_) {
        std::vector<int> part;
        while (m) {
            part.push_back(std::countr_zero(m));
            m &= m - 1;
        }
        out.push_back(std::move(part));
    }
    return out;
}

std::string Partition::str() const {
    std::string s;
    for (std::size_t j = 0; j < masks_.size(); ++j) {
        if (j) s += '|';
        s += '{';
        std::uint32_t m = masks_[j];
        bool first = true;
        while (m) {
            if (!first) s += ',';
            s += std::to_string(std::countr_zero(m) + 1);
            first = false;
            m &= m - 1;
        }
        s += '}';
    }
    return s;
}

Partition intersect(const Partition& p, const Partition& q) {
    require_same_degree(p, q, "intersect");
    std::vector<std::uint32_t> masks;
    for (std::uint32_t a : p.masks())
        for (std::uint32_t b : q.masks()) {
            const std::uint32_t m = a & b;
            if (m) masks.push_back(m);
        }
    return Partition::from_masks(p.degree(), std::move(masks));
}

Partition coarsen_join(const Partition& p, const Partition& q) {
    require_same_degree(p, q, "coarsen_join");
    UnionFind uf(p.degree());
    for (const Partition* part : {&p, &q})
        for (std::uint32_t m : part->masks()) {
            const int anchor = std::countr_zero(m);
            std::uint32_t rest = m & (m - 1);
            while (rest) {
                uf.unite(anchor, std::countr_zero(rest));
                rest &= rest - 1;
            }
        }
    return uf.to_partition(p.degree());
}

bool is_refinement(const Partition& p, const Partition& q) {
    require_same_degree(p, q, "is_refinement");
    for (std::uint32_t m : p.masks())
        if ((m & ~q.part_mask_of(std::countr_zero(m))) != 0) return false;
    return true;
}

bool pointwise_stabilizes(PermView img, const Partition& p) {
    for (std::size_t i = 0; i < img.size(); ++i)
        if (p.part_index_of(img[i]) != p.part_index_of(static_cast<int>(i))) return false;
    return true;
}

bool pointwise_stabilizes(const PositionPerm& perm, const Partition& p) {
    if (perm.degree() != p.degree()) throw std::invalid_argument("pointwise_stabilizes: degree mismatch");
    return pointwise_stabilizes(perm.images(), p);
}

bool setwise_stabilizes(PermView img, const Partition& p) {
    // A bijection mapping every part into a part permutes the parts.
    for (std::uint32_t m : p.masks()) {
        const int target = p.part_index_of(img[static_cast<std::size_t>(std::countr_zero(m))]);
        std::uint32_t rest = m & (m - 1);
        while (rest) {
            if (p.part_index_of(img[static_cast<std::size_t>(std::countr_zero(rest))]) != target) return false;
            rest &= rest - 1;
        }
    }
    return true;
}

bool setwise_stabilizes(const PositionPerm& perm, const Partition& p) {
    if (perm.degree() != p.degree()) throw std::invalid_argument("setwise_stabilizes: degree mismatch");
    return setwise_stabilizes(perm.images(), p);
}

bool transposition_stabilizes(const StringSet& a, int i, int j) {
    const std::uint32_t mi = 1u << i, mj = 1u << j;
    for (std::uint32_t v : a.values()) {
        const bool bi = v & mi, bj = v & mj;
        if (bi != bj && !a.contains(v ^ mi ^ mj)) return false;
    }
    return true;
}

bool supports(const Partition& p, const StringSet& a) {
    if (p.degree() != a.dim()) throw std::invalid_argument("supports: degree mismatch");
    for (std::uint32_t m : p.masks()) {
        std::uint32_t outer = m;
        while (outer) {
            const int i = std::countr_zero(outer);
            outer &= outer - 1;
            std::uint32_t inner = outer;
            while (inner) {
                const int j = std::countr_zero(inner);
                inner &= inner - 1;
                if (!transposition_stabilizes(a, i, j)) return false;
            }
        }
    }
    return true;
}

Partition coarsest_supporting_partition(const StringSet& a) {
    if (a.empty()) throw std::invalid_argument("coarsest_supporting_partition: empty set");
    const int n = a.dim();
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (uf.find(i) != uf.find(j) && transposition_stabilizes(a, i, j)) uf.unite(i, j);
    return uf.to_partition(n);
}

Partition intersect_family(const StringSet& a) {
    if (a.empty()) throw std::invalid_argument("intersect_family: empty set");
    Partition acc = Partition::single_part(a.dim());
    for (std::uint32_t v : a.values()) acc = intersect(acc, Partition::zero_one_split(BitString(v, a.dim())));
    return acc;
}

std::vector<int> singleton_positions(const Partition& p) {
    std::vector<int> out;
    for (std::uint32_t m : p.masks())
        if (std::has_single_bit(m)) out.push_back(std::countr_zero(m));
    return out;
}

std::uint32_t singleton_mask(const Partition& p) {
    std::uint32_t out = 0;
    for (std::uint32_t m : p.masks())
        if (std::has_single_bit(m)) out |= m;
    return out;
}

}  // namespace orbitlab
