#include "orbitlab/hfsets.hpp"

#include <algorithm>
#include <set>

#include "orbitlab/group_engine.hpp"

namespace orbitlab {

HFObject HFObject::atom(const BitString& a) {
    HFObject x;
    x.is_atom_ = true;
    x.atom_ = a;
    return x;
}

HFObject HFObject::set(std::vector<HFObject> children) {
    HFObject x;
    x.kids_ = std::move(children);
    std::sort(x.kids_.begin(), x.kids_.end());
    x.kids_.erase(std::unique(x.kids_.begin(), x.kids_.end()), x.kids_.end());
    return x;
}

const BitString& HFObject::atom_value() const {
    if (!is_atom_) throw std::logic_error("HFObject: not an atom");
    return atom_;
}

const std::vector<HFObject>& HFObject::children() const {
    if (is_atom_) throw std::logic_error("HFObject: atoms have no children");
    return kids_;
}

std::strong_ordering HFObject::operator<=>(const HFObject& other) const {
    if (is_atom_ != other.is_atom_) return is_atom_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (is_atom_) return atom_ <=> other.atom_;
    return std::lexicographical_compare_three_way(kids_.begin(), kids_.end(), other.kids_.begin(),
                                                  other.kids_.end());
}

std::string HFObject::str() const {
    if (is_atom_) return atom_.str();
    std::string s = "{";
    for (std::size_t i = 0; i < kids_.size(); ++i) {
        if (i) s += ", ";
        s += kids_[i].str();
    }
    return s + "}";
}

namespace {

void collect_members(const HFObject& x, std::set<HFObject>& seen) {
    if (!seen.insert(x).second) return;
    if (x.is_set())
        for (const HFObject& child : x.children()) collect_members(child, seen);
}

template <typename AtomMap>
HFObject map_atoms(const HFObject& x, AtomMap&& f) {
    if (x.is_atom()) return HFObject::atom(f(x.atom_value()));
    std::vector<HFObject> kids;
    kids.reserve(x.children().size());
    for (const HFObject& child : x.children()) kids.push_back(map_atoms(child, f));
    return HFObject::set(std::move(kids));
}

HFObject atom_set(const StringSet& c) {
    std::vector<HFObject> atoms;
    atoms.reserve(c.size());
    for (std::uint32_t v : c.values()) atoms.push_back(HFObject::atom(BitString(v, c.dim())));
    return HFObject::set(std::move(atoms));
}

/// Runs fn for every element of the acting group; stops early when fn
/// returns false.
template <typename Fn>
void scan_action(int n, HFAction action, Fn&& fn) {
    bool alive = true;
    for_each_perm(n, [&](PermView img) {
        if (!alive) return;
        if (action == HFAction::positions) {
            alive = fn(img, 0u);
            return;
        }
        const std::uint32_t words = 1u << n;
        for (std::uint32_t w = 0; alive && w < words; ++w) alive = fn(img, w);
    });
}

}  // namespace

std::uint64_t transitive_closure_size(const HFObject& x) {
    std::set<HFObject> seen;
    collect_members(x, seen);
    return seen.size();
}

HFObject apply_perm_hf(const PositionPerm& pi, const HFObject& x) {
    return map_atoms(x, [&](const BitString& a) { return pi.apply(a); });
}

HFObject apply_aut_hf(const AutPair& sigma, const HFObject& x) {
    return map_atoms(x, [&](const BitString& a) { return sigma.apply(a); });
}

HFObject encode_ordered_partition(const OrderedPartition& p) {
    if (p.classes.empty()) throw std::invalid_argument("encode_ordered_partition: empty partition");
    HFObject tail = HFObject::empty_set();
    for (std::size_t i = p.classes.size(); i-- > 0;)
        tail = HFObject::set({atom_set(p.classes[i]), std::move(tail)});
    return tail;
}

bool is_symmetric(const HFObject& x, int n, HFAction action, int cap) {
    require_brute_force_dim(n, cap, "is_symmetric");
    bool symmetric = true;
    scan_action(n, action, [&](PermView img, std::uint32_t w) {
        const AutPair sigma(PositionPerm::from_images(img), BitString(w, n));
        if (!(apply_aut_hf(sigma, x) == x)) {
            symmetric = false;
            return false;
        }
        return true;
    });
    return symmetric;
}

mpz_class Polynomial::eval(std::uint64_t m) const {
    mpz_class acc = 0;
    const mpz_class base = mpz_class(static_cast<unsigned long>(m));
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * base + mpz_class(static_cast<unsigned long>(coeffs[i]));
    return acc;
}

bool is_p_bounded(const HFObject& x, const Polynomial& p, std::uint64_t universe_size) {
    return mpz_class(static_cast<unsigned long>(transitive_closure_size(x))) <= p.eval(universe_size);
}

std::uint64_t orbit_size_hf(const HFObject& x, int n, HFAction action, int cap, int parallelism) {
    require_brute_force_dim(n, cap, "orbit_size_hf");
    auto shard_images = run_shards(n, parallelism, [&](int s) {
        std::set<HFObject> images;
        for_each_perm_in_shard(n, s, [&](PermView img) {
            const PositionPerm pi = PositionPerm::from_images(img);
            if (action == HFAction::positions) {
                images.insert(apply_perm_hf(pi, x));
                return;
            }
            const std::uint32_t words = 1u << n;
            for (std::uint32_t w = 0; w < words; ++w)
                images.insert(apply_aut_hf(AutPair(pi, BitString(w, n)), x));
        });
        return images;
    });
    std::set<HFObject> all;
    for (auto& shard : shard_images) all.merge(shard);
    return all.size();
}

}  // namespace orbitlab
