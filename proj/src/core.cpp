#include "orbitlab/core.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace orbitlab {

BitString BitString::parse(std::string_view word) {
    if (word.empty() || word.size() > kMaxDim)
        throw ParseError("bit-string must have length 1.." + std::to_string(kMaxDim));
    std::uint32_t bits = 0;
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (word[k] == '1')
            bits |= 1u << k;
        else if (word[k] != '0')
            throw ParseError("bit-string may only contain 0 and 1");
    }
    return BitString(bits, static_cast<int>(word.size()));
}

int BitString::weight() const { return std::popcount(bits_); }

std::string BitString::str() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int k = 0; k < n_; ++k)
        if (bit(k)) s[static_cast<std::size_t>(k)] = '1';
    return s;
}

PositionPerm PositionPerm::identity(int n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("PositionPerm: degree out of range");
    PositionPerm p;
    p.n_ = n;
    for (int i = 0; i < n; ++i) p.img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    return p;
}

PositionPerm PositionPerm::from_images(std::span<const std::uint8_t> images) {
    const int n = static_cast<int>(images.size());
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("PositionPerm: degree out of range");
    std::uint32_t seen = 0;
    PositionPerm p;
    p.n_ = n;
    for (int i = 0; i < n; ++i) {
        const std::uint8_t x = images[static_cast<std::size_t>(i)];
        if (x >= n || (seen & (1u << x))) throw std::invalid_argument("PositionPerm: images are not a bijection");
        seen |= 1u << x;
        p.img_[static_cast<std::size_t>(i)] = x;
    }
    return p;
}

PositionPerm PositionPerm::from_images(const std::vector<int>& images) {
    std::vector<std::uint8_t> img;
    img.reserve(images.size());
    for (int x : images) {
        if (x < 0 || x >= kMaxDim) throw std::invalid_argument("PositionPerm: image out of range");
        img.push_back(static_cast<std::uint8_t>(x));
    }
    return from_images(std::span<const std::uint8_t>(img));
}

PositionPerm PositionPerm::parse(std::string_view one_line) {
    std::istringstream in{std::string(one_line)};
    std::vector<int> images;
    int x = 0;
    while (in >> x) images.push_back(x - 1);  // external form is 1-based
    if (!in.eof()) throw ParseError("permutation: expected whitespace-separated integers");
    if (images.empty()) throw ParseError("permutation: empty image list");
    try {
        return from_images(images);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

PositionPerm PositionPerm::transposition(int n, int i, int j) {
    PositionPerm p = identity(n);
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("transposition: position out of range");
    std::swap(p.img_[static_cast<std::size_t>(i)], p.img_[static_cast<std::size_t>(j)]);
    return p;
}

bool PositionPerm::is_identity() const {
    for (int i = 0; i < n_; ++i)
        if (img_[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

PositionPerm PositionPerm::inverse() const {
    PositionPerm p;
    p.n_ = n_;
    for (int i = 0; i < n_; ++i) p.img_[img_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
    return p;
}

PositionPerm operator*(const PositionPerm& a, const PositionPerm& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("PositionPerm: degree mismatch in composition");
    PositionPerm p;
    p.n_ = a.n_;
    for (int i = 0; i < a.n_; ++i) p.img_[static_cast<std::size_t>(i)] = a.img_[b.img_[static_cast<std::size_t>(i)]];
    return p;
}

std::uint32_t PositionPerm::apply_bits(std::uint32_t v) const {
    return apply_perm_bits(images(), v);
}

BitString PositionPerm::apply(const BitString& v) const {
    if (v.dim() != n_) throw std::invalid_argument("PositionPerm: degree mismatch");
    return BitString(apply_bits(v.bits()), n_);
}

std::string PositionPerm::str() const {
    std::string s;
    for (int i = 0; i < n_; ++i) {
        if (i) s += ' ';
        s += std::to_string(image(i) + 1);
    }
    return s;
}

std::vector<std::uint32_t> vertex_map(PermView img, int n) {
    std::vector<std::uint32_t> vm(std::size_t{1} << n);
    vm[0] = 0;
    for (std::uint32_t v = 1; v < vm.size(); ++v) {
        const std::uint32_t low = v & (~v + 1);
        vm[v] = vm[v ^ low] | (1u << img[static_cast<std::size_t>(std::countr_zero(low))]);
    }
    return vm;
}

StringSet::StringSet(int n, std::vector<std::uint32_t> elems) : n_(n), elems_(std::move(elems)) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("StringSet: dimension out of range");
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    for (std::uint32_t v : elems_)
        if (n < 32 && (v >> n) != 0) throw std::invalid_argument("StringSet: element exceeds dimension");
}

StringSet StringSet::parse(int n, std::span<const std::string> words) {
    std::vector<std::uint32_t> elems;
    elems.reserve(words.size());
    for (const std::string& w : words) {
        BitString b = BitString::parse(w);
        if (b.dim() != n) throw ParseError("string of length " + std::to_string(b.dim()) +
                                           " in a set of dimension " + std::to_string(n));
        elems.push_back(b.bits());
    }
    return StringSet(n, std::move(elems));
}

StringSet StringSet::of(std::initializer_list<std::string_view> words) {
    if (words.size() == 0) throw std::invalid_argument("StringSet::of: empty list has no dimension");
    std::vector<std::uint32_t> elems;
    int n = -1;
    for (std::string_view w : words) {
        BitString b = BitString::parse(w);
        if (n < 0) n = b.dim();
        if (b.dim() != n) throw std::invalid_argument("StringSet::of: mixed word lengths");
        elems.push_back(b.bits());
    }
    return StringSet(n, std::move(elems));
}

StringSet StringSet::full(int n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("StringSet::full: dimension out of range");
    std::vector<std::uint32_t> elems(std::size_t{1} << n);
    for (std::uint32_t v = 0; v < elems.size(); ++v) elems[v] = v;
    return StringSet(n, std::move(elems));
}

bool StringSet::contains(std::uint32_t v) const {
    return std::binary_search(elems_.begin(), elems_.end(), v);
}

StringSet StringSet::apply(const PositionPerm& p) const {
    if (p.degree() != n_) throw std::invalid_argument("StringSet: degree mismatch");
    std::vector<std::uint32_t> out;
    out.reserve(elems_.size());
    for (std::uint32_t v : elems_) out.push_back(p.apply_bits(v));
    return StringSet(n_, std::move(out));
}

std::vector<std::string> StringSet::words() const {
    std::vector<std::uint32_t> order = elems_;
    std::sort(order.begin(), order.end(),
              [this](std::uint32_t a, std::uint32_t b) { return lex_key(a, n_) < lex_key(b, n_); });
    std::vector<std::string> out;
    out.reserve(order.size());
    for (std::uint32_t v : order) out.push_back(BitString(v, n_).str());
    return out;
}

std::string StringSet::str() const {
    std::string s = "{";
    bool first = true;
    for (const std::string& w : words()) {
        if (!first) s += ",";
        s += w;
        first = false;
    }
    return s + "}";
}

BitString AutPair::apply(const BitString& v) const {
    if (v.dim() != word.dim()) throw std::invalid_argument("AutPair: degree mismatch");
    return BitString(apply_bits(v.bits()), v.dim());
}

int hamming_distance(const BitString& u, const BitString& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("hamming_distance: length mismatch");
    return std::popcount(u.bits() ^ v.bits());
}

HypercubeGraph hypercube(int n) {
    if (n < 1 || n > kMaxDim) throw CapExceeded("hypercube: dimension must be in 1.." + std::to_string(kMaxDim));
    HypercubeGraph g;
    g.n = n;
    const std::uint32_t count = 1u << n;
    g.vertices.resize(count);
    for (std::uint32_t v = 0; v < count; ++v) g.vertices[v] = v;
    g.edges.reserve(static_cast<std::size_t>(n) << (n - 1));
    for (std::uint32_t v = 0; v < count; ++v)
        for (int k = 0; k < n; ++k) {
            const std::uint32_t u = v ^ (1u << k);
            if (v < u) g.edges.emplace_back(v, u);
        }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

BitString apply_position_perm(const PositionPerm& p, const BitString& v) { return p.apply(v); }

BitString apply_aut(const AutPair& sigma, const BitString& v) { return sigma.apply(v); }

bool is_hypercube_automorphism(const AutPair& sigma, int n) {
    if (sigma.perm.degree() != n) throw std::invalid_argument("is_hypercube_automorphism: degree mismatch");
    // sigma is bijective on vertices, so mapping E_n into E_n is onto.
    const std::uint32_t count = 1u << n;
    for (std::uint32_t v = 0; v < count; ++v) {
        const std::uint32_t sv = sigma.apply_bits(v);
        for (int k = 0; k < n; ++k) {
            const std::uint32_t u = v ^ (1u << k);
            if (v < u && std::popcount(sv ^ sigma.apply_bits(u)) != 1) return false;
        }
    }
    return true;
}

}  // namespace orbitlab
