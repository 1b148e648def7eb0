#ifndef ORBITLAB_CORE_HPP
#define ORBITLAB_CORE_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orbitlab {

/// Dimension cap for structure generation (hypercubes, string sets).
inline constexpr int kMaxDim = 16;

/// Default cap for full Sym_n enumeration; 10! ~ 3.6M permutations.
inline constexpr int kDefaultBruteForceCap = 10;

/// Absolute enumeration cap; callers may raise the default up to this.
inline constexpr int kHardBruteForceCap = 12;

/// Dimension up to which orbit sizes are cross-checked by direct enumeration.
inline constexpr int kDirectOrbitCrossCheckDim = 7;

/// Thrown when an operation would exceed the brute-force or structure cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on malformed textual input (instance files, serialized values).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

inline std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

/// Key that orders packed words like their ASCII form (position 1 most
/// significant). Packed values themselves sort LSB-first, which is not
/// the dictionary order on words.
inline std::uint32_t lex_key(std::uint32_t bits, int n) {
    std::uint32_t key = 0;
    for (int k = 0; k < n; ++k) key = (key << 1) | ((bits >> k) & 1u);
    return key;
}

/// A length-n binary word. Bits are packed LSB-first: word position k
/// (1-based in all external I/O) lives at bit index k-1. Words compare in
/// dictionary order.
class BitString {
public:
    BitString() = default;
    BitString(std::uint32_t bits, int n) : bits_(bits), n_(n) {
        if (n < 1 || n > kMaxDim) throw std::invalid_argument("BitString: dimension out of range");
        if (n < 32 && (bits >> n) != 0) throw std::invalid_argument("BitString: stray bits beyond dimension");
    }

    /// Parses an ASCII 0/1 word; leftmost character is position 1.
    static BitString parse(std::string_view word);

    int dim() const { return n_; }
    std::uint32_t bits() const { return bits_; }
    bool bit(int i) const { return (bits_ >> i) & 1u; }  // 0-based position index
    int weight() const;

    std::string str() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return lex_key(a.bits_, a.n_) <=> lex_key(b.bits_, b.n_);
    }

private:
    std::uint32_t bits_ = 0;
    int n_ = 1;
};

/// An element of Sym_n acting on word positions (0-based internally).
class PositionPerm {
public:
    PositionPerm() = default;

    static PositionPerm identity(int n);
    /// Builds from 0-based images: image(i) = images[i].
    static PositionPerm from_images(std::span<const std::uint8_t> images);
    static PositionPerm from_images(const std::vector<int>& images);
    /// Parses the one-line form "3 1 2" (1-based images of 1..n).
    static PositionPerm parse(std::string_view one_line);
    static PositionPerm transposition(int n, int i, int j);

    int degree() const { return n_; }
    int image(int i) const { return img_[static_cast<std::size_t>(i)]; }
    int operator()(int i) const { return image(i); }
    std::span<const std::uint8_t> images() const { return {img_.data(), static_cast<std::size_t>(n_)}; }

    bool is_identity() const;
    PositionPerm inverse() const;
    /// Composition acting left-to-right through application: (a*b)(i) = a(b(i)).
    friend PositionPerm operator*(const PositionPerm& a, const PositionPerm& b);

    /// Applies the position action to a packed word: bit image(i) of the
    /// result equals bit i of v, i.e. w_k = v_{perm^-1(k)}.
    std::uint32_t apply_bits(std::uint32_t v) const;
    BitString apply(const BitString& v) const;

    std::string str() const;  // one-line 1-based images

    friend bool operator==(const PositionPerm& a, const PositionPerm& b) {
        return a.n_ == b.n_ && a.img_ == b.img_;
    }
    friend std::strong_ordering operator<=>(const PositionPerm& a, const PositionPerm& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.img_ <=> b.img_;
    }

private:
    std::array<std::uint8_t, kMaxDim> img_{};
    int n_ = 0;
};

/// Lightweight view of a permutation during streaming enumeration.
using PermView = std::span<const std::uint8_t>;

inline std::uint32_t apply_perm_bits(PermView img, std::uint32_t v) {
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < img.size(); ++i)
        if ((v >> i) & 1u) w |= 1u << img[i];
    return w;
}

/// Vertex image table over {0,1}^n for one permutation; vm[v] = pi(v).
std::vector<std::uint32_t> vertex_map(PermView img, int n);

/// A finite set of same-length binary words, stored sorted by packed value.
class StringSet {
public:
    StringSet() = default;
    StringSet(int n, std::vector<std::uint32_t> elems);

    static StringSet parse(int n, std::span<const std::string> words);
    static StringSet of(std::initializer_list<std::string_view> words);
    /// The full vertex set {0,1}^n.
    static StringSet full(int n);

    int dim() const { return n_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    bool contains(std::uint32_t v) const;
    const std::vector<std::uint32_t>& values() const { return elems_; }

    StringSet apply(const PositionPerm& p) const;

    /// Word forms in dictionary order.
    std::vector<std::string> words() const;
    std::string str() const;

    friend bool operator==(const StringSet&, const StringSet&) = default;
    friend std::strong_ordering operator<=>(const StringSet&, const StringSet&) = default;

private:
    int n_ = 0;
    std::vector<std::uint32_t> elems_;
};

/// A full hypercube automorphism (pi, w): v |-> pi(v) XOR w.
struct AutPair {
    PositionPerm perm;
    BitString word;

    AutPair(PositionPerm p, BitString w) : perm(std::move(p)), word(w) {
        if (perm.degree() != word.dim())
            throw std::invalid_argument("AutPair: word length must equal permutation degree");
    }

    std::uint32_t apply_bits(std::uint32_t v) const { return perm.apply_bits(v) ^ word.bits(); }
    BitString apply(const BitString& v) const;
};

struct HypercubeGraph {
    int n = 0;
    std::vector<std::uint32_t> vertices;                          // 0 .. 2^n-1
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;   // u < v, sorted
};

int hamming_distance(const BitString& u, const BitString& v);

HypercubeGraph hypercube(int n);

BitString apply_position_perm(const PositionPerm& p, const BitString& v);

BitString apply_aut(const AutPair& sigma, const BitString& v);

/// True iff sigma maps the hypercube edge set onto itself.
bool is_hypercube_automorphism(const AutPair& sigma, int n);

}  // namespace orbitlab

#endif
