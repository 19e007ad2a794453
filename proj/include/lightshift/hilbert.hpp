#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lightshift/numerics.hpp"

namespace lightshift {

enum class Representation { Product, Symmetric };

/// Single-atom states. Zero/One are the metastable levels, Two the excited
/// level; Plus/Minus are (|0> +- |1>)/sqrt(2).
enum class Level { Zero, One, Two, Plus, Minus };

Level parse_level(char c);
char level_char(Level l);

/// Largest Hilbert-space dimension build_space will enumerate.
inline constexpr std::size_t kMaxSpaceDimension = 1'000'000;
/// Largest dimension for which dense operators are materialized.
inline constexpr std::size_t kMaxDenseDimension = 4096;

struct SpaceSpec {
    int n_max = 2;   ///< Fock truncation per mode (inclusive)
    int n_modes = 1; ///< 1 or 2
    int n_atoms = 1;
    int levels = 2;  ///< 2 (metastable 0,1) or 3 (0,1,2)
    Representation representation = Representation::Product;
};

/// Product for N <= 3, symmetric above.
Representation default_representation(int n_atoms);

/// Truncated Fock (x) atomic space with a frozen basis enumeration.
///
/// Basis order is photon-major: the photon configuration varies slowest
/// (mode a slower than mode b) and the atomic configuration fastest, so
/// index = photon_index * atomic_dim + atomic_index.
///
/// Atomic configurations:
///  - product: one level per atom, atom 1 most significant, ascending;
///  - symmetric: occupation counts (c_0, c_1[, c_2]) summing to N, in
///    descending lexicographic order, so all-|0> comes first.
class Space {
public:
    static std::shared_ptr<const Space> build(const SpaceSpec& spec);

    /// Dimension a spec would have, without enumerating it.
    static double dimension_of(const SpaceSpec& spec);

    const SpaceSpec& spec() const { return spec_; }
    std::size_t dim() const { return photon_dim_ * atomic_dim(); }
    std::size_t photon_dim() const { return photon_dim_; }
    std::size_t atomic_dim() const { return atomic_configs_.size(); }
    int n_atoms() const { return spec_.n_atoms; }
    int levels() const { return spec_.levels; }
    int n_modes() const { return spec_.n_modes; }
    int n_max() const { return spec_.n_max; }
    bool symmetric() const { return spec_.representation == Representation::Symmetric; }

    /// Per-atom levels (product) or occupation counts per level (symmetric).
    const std::vector<std::vector<int>>& atomic_configs() const { return atomic_configs_; }

    std::vector<int> photons_of(std::size_t index) const;
    std::size_t atomic_of(std::size_t index) const { return index % atomic_dim(); }
    std::size_t photon_index(const std::vector<int>& photons) const;
    std::size_t index_of(const std::vector<int>& photons, std::size_t atomic_index) const;

    /// Number of atoms in computational level `level` for an atomic configuration.
    int level_count(std::size_t atomic_index, int level) const;

    /// Index of an atomic configuration; throws if absent.
    std::size_t find_atomic(const std::vector<int>& config) const;

    /// "n=2;atoms=01" (product) or "n=2;occ=(1,1,0)" (symmetric); two modes
    /// render photons as "n=(1,0)".
    std::string label(std::size_t index) const;

    bool same_as(const Space& other) const;

private:
    explicit Space(const SpaceSpec& spec);

    SpaceSpec spec_;
    std::size_t photon_dim_ = 1;
    std::vector<std::vector<int>> atomic_configs_;
    std::vector<std::vector<int>> level_counts_;
};

using SpacePtr = std::shared_ptr<const Space>;

/// Validated space; alias kept for the operation name used throughout.
inline SpacePtr build_space(const SpaceSpec& spec) { return Space::build(spec); }

/// A dense operator tagged with the space it acts on.
struct Operator {
    ComplexMatrix matrix;
    SpacePtr space;
    std::string label;

    Operator adjoint() const;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex s, const Operator& a);

Operator identity(const SpacePtr& space);
Operator annihilation(const SpacePtr& space, int mode);
Operator creation(const SpacePtr& space, int mode);
Operator number(const SpacePtr& space, int mode);

/// S_{bra,ket} := sum_k |bra_k><ket_k| (x) identity on photons.
Operator collective(const SpacePtr& space, Level bra, Level ket);
/// S_3 := S_{++} - S_{--}.
Operator s3(const SpacePtr& space);

/// Photonic part of a basis state plus an atomic part given either as one
/// level per atom (any Level, including +/-) or as computational occupation
/// counts (symmetric spaces only).
struct BasisStateSpec {
    std::vector<int> photons;
    std::variant<std::vector<Level>, std::vector<int>> atoms;
};

/// Unit-norm state. In a symmetric space a per-atom list is projected onto
/// the symmetric sector and renormalized.
ComplexVector basis_state(const Space& space, const BasisStateSpec& spec);

/// |photons> (x) |level>^{(x)N}.
ComplexVector uniform_state(const Space& space, const std::vector<int>& photons, Level level);

/// Isometry (columns = normalized Dicke states) from a symmetric space into
/// the product space with identical n_max / n_modes / N / levels.
ComplexMatrix symmetric_embedding(const Space& symmetric, const Space& product);

/// Projector onto the photon configuration `photons`.
ComplexMatrix photon_sector_projector(const Space& space, const std::vector<int>& photons);

} // namespace lightshift
