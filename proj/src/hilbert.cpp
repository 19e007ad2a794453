#include "lightshift/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <iomanip>
#include <sstream>

namespace lightshift {

namespace {

void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw ValidationError(msg);
}

// Single-atom amplitude vector of a level, in the computational basis.
Eigen::VectorXcd level_vector(Level l, int levels)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(levels);
    const double s = 1.0 / std::sqrt(2.0);
    switch (l) {
    case Level::Zero: v(0) = 1.0; break;
    case Level::One: v(1) = 1.0; break;
    case Level::Two:
        require(levels >= 3, "level 2 requested on a space without an excited level");
        v(2) = 1.0;
        break;
    case Level::Plus: v(0) = s; v(1) = s; break;
    case Level::Minus: v(0) = s; v(1) = -s; break;
    }
    return v;
}

double multinomial(const std::vector<int>& occ)
{
    int n = std::accumulate(occ.begin(), occ.end(), 0);
    double log_m = std::lgamma(n + 1.0);
    for (int o : occ)
        log_m -= std::lgamma(o + 1.0);
    return std::exp(log_m);
}

std::vector<std::vector<int>> enumerate_product(int n_atoms, int levels)
{
    std::size_t count = 1;
    for (int k = 0; k < n_atoms; ++k)
        count *= static_cast<std::size_t>(levels);
    std::vector<std::vector<int>> out(count, std::vector<int>(n_atoms));
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t rest = i;
        for (int k = n_atoms - 1; k >= 0; --k) {
            out[i][k] = static_cast<int>(rest % levels);
            rest /= levels;
        }
    }
    return out;
}

// Occupations (c_0, ..., c_{L-1}) with sum N, descending lexicographic.
std::vector<std::vector<int>> enumerate_symmetric(int n_atoms, int levels)
{
    std::vector<std::vector<int>> out;
    std::vector<int> occ(levels, 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == levels - 1) {
            occ[pos] = remaining;
            out.push_back(occ);
            return;
        }
        for (int c = remaining; c >= 0; --c) {
            occ[pos] = c;
            rec(pos + 1, remaining - c);
        }
    };
    rec(0, n_atoms);
    return out;
}

std::vector<int> occupation_of(const std::vector<int>& config, int levels)
{
    std::vector<int> occ(levels, 0);
    for (int l : config)
        ++occ[l];
    return occ;
}

// Atomic-only matrix of S_{ab} in computational levels.
ComplexMatrix atomic_transition(const Space& space, int a, int b)
{
    const std::size_t d = space.atomic_dim();
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const auto& configs = space.atomic_configs();
    for (std::size_t j = 0; j < d; ++j) {
        const auto& cfg = configs[j];
        if (space.symmetric()) {
            if (cfg[b] == 0)
                continue;
            if (a == b) {
                m(j, j) += static_cast<double>(cfg[a]);
                continue;
            }
            auto next = cfg;
            --next[b];
            ++next[a];
            const std::size_t i = space.find_atomic(next);
            m(i, j) += std::sqrt(static_cast<double>(next[a]) * cfg[b]);
        } else {
            for (std::size_t k = 0; k < cfg.size(); ++k) {
                if (cfg[k] != b)
                    continue;
                auto next = cfg;
                next[k] = a;
                m(space.find_atomic(next), j) += 1.0;
            }
        }
    }
    return m;
}

ComplexMatrix lift_atomic(const Space& space, const ComplexMatrix& atomic)
{
    return numerics::kron(ComplexMatrix::Identity(space.photon_dim(), space.photon_dim()), atomic);
}

void require_dense(const Space& space)
{
    if (space.dim() > kMaxDenseDimension) {
        std::ostringstream os;
        os << "dense operators limited to dimension " << kMaxDenseDimension << " (space has " << space.dim() << ")";
        throw GuardError(os.str());
    }
}

// Atomic-only isometry from symmetric configurations into product configurations.
ComplexMatrix atomic_embedding(int n_atoms, int levels)
{
    const auto product = enumerate_product(n_atoms, levels);
    const auto symmetric = enumerate_symmetric(n_atoms, levels);
    std::map<std::vector<int>, std::size_t> sym_index;
    for (std::size_t i = 0; i < symmetric.size(); ++i)
        sym_index[symmetric[i]] = i;
    ComplexMatrix b = ComplexMatrix::Zero(product.size(), symmetric.size());
    for (std::size_t i = 0; i < product.size(); ++i) {
        const auto occ = occupation_of(product[i], levels);
        b(i, sym_index.at(occ)) = 1.0 / std::sqrt(multinomial(occ));
    }
    return b;
}

} // namespace

Level parse_level(char c)
{
    switch (c) {
    case '0': return Level::Zero;
    case '1': return Level::One;
    case '2': return Level::Two;
    case '+': return Level::Plus;
    case '-': return Level::Minus;
    default: throw ValidationError(std::string("unknown atomic level '") + c + "'");
    }
}

char level_char(Level l)
{
    switch (l) {
    case Level::Zero: return '0';
    case Level::One: return '1';
    case Level::Two: return '2';
    case Level::Plus: return '+';
    case Level::Minus: return '-';
    }
    return '?';
}

Representation default_representation(int n_atoms)
{
    return n_atoms > 3 ? Representation::Symmetric : Representation::Product;
}

double Space::dimension_of(const SpaceSpec& spec)
{
    const double photons = std::pow(spec.n_max + 1.0, spec.n_modes);
    if (spec.representation == Representation::Product)
        return photons * std::pow(static_cast<double>(spec.levels), spec.n_atoms);
    // C(N + L - 1, L - 1)
    double c = 1.0;
    for (int k = 1; k < spec.levels; ++k)
        c = c * (spec.n_atoms + k) / k;
    return photons * std::round(c);
}

std::shared_ptr<const Space> Space::build(const SpaceSpec& spec)
{
    require(spec.n_max >= 0, "n_max must be >= 0");
    require(spec.n_modes == 1 || spec.n_modes == 2, "n_modes must be 1 or 2");
    require(spec.n_atoms >= 1, "n_atoms must be >= 1");
    require(spec.levels == 2 || spec.levels == 3, "levels_per_atom must be 2 or 3");
    const double d = dimension_of(spec);
    if (d > static_cast<double>(kMaxSpaceDimension)) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(0) << "Hilbert-space dimension " << d << " exceeds guard " << kMaxSpaceDimension;
        throw GuardError(os.str());
    }
    return std::shared_ptr<const Space>(new Space(spec));
}

Space::Space(const SpaceSpec& spec) : spec_(spec)
{
    photon_dim_ = 1;
    for (int m = 0; m < spec.n_modes; ++m)
        photon_dim_ *= static_cast<std::size_t>(spec.n_max + 1);
    atomic_configs_ = symmetric() ? enumerate_symmetric(spec.n_atoms, spec.levels)
                                  : enumerate_product(spec.n_atoms, spec.levels);
    level_counts_.reserve(atomic_configs_.size());
    for (const auto& cfg : atomic_configs_)
        level_counts_.push_back(symmetric() ? cfg : occupation_of(cfg, spec.levels));
}

std::vector<int> Space::photons_of(std::size_t index) const
{
    std::size_t p = index / atomic_dim();
    std::vector<int> out(spec_.n_modes);
    for (int m = spec_.n_modes - 1; m >= 0; --m) {
        out[m] = static_cast<int>(p % (spec_.n_max + 1));
        p /= (spec_.n_max + 1);
    }
    return out;
}

std::size_t Space::photon_index(const std::vector<int>& photons) const
{
    if (static_cast<int>(photons.size()) != spec_.n_modes)
        throw ValidationError("photon specification must list one occupation per mode");
    std::size_t p = 0;
    for (int n : photons) {
        if (n < 0 || n > spec_.n_max) {
            std::ostringstream os;
            os << "photon number " << n << " outside [0, " << spec_.n_max << "]";
            throw ValidationError(os.str());
        }
        p = p * (spec_.n_max + 1) + static_cast<std::size_t>(n);
    }
    return p;
}

std::size_t Space::index_of(const std::vector<int>& photons, std::size_t atomic_index) const
{
    return photon_index(photons) * atomic_dim() + atomic_index;
}

int Space::level_count(std::size_t atomic_index, int level) const
{
    return level_counts_.at(atomic_index).at(level);
}

std::size_t Space::find_atomic(const std::vector<int>& config) const
{
    if (!symmetric()) {
        // Base-L digits, atom 1 most significant.
        if (static_cast<int>(config.size()) != spec_.n_atoms)
            throw ValidationError("atomic configuration must list one level per atom");
        std::size_t idx = 0;
        for (int l : config) {
            if (l < 0 || l >= spec_.levels)
                throw ValidationError("atomic level out of range");
            idx = idx * spec_.levels + static_cast<std::size_t>(l);
        }
        return idx;
    }
    auto it = std::find(atomic_configs_.begin(), atomic_configs_.end(), config);
    if (it == atomic_configs_.end())
        throw ValidationError("occupation counts do not describe a state of this space");
    return static_cast<std::size_t>(it - atomic_configs_.begin());
}

std::string Space::label(std::size_t index) const
{
    std::ostringstream os;
    const auto photons = photons_of(index);
    if (spec_.n_modes == 1) {
        os << "n=" << photons[0];
    } else {
        os << "n=(" << photons[0] << "," << photons[1] << ")";
    }
    const auto& cfg = atomic_configs_[atomic_of(index)];
    if (symmetric()) {
        os << ";occ=(";
        for (std::size_t k = 0; k < cfg.size(); ++k)
            os << (k ? "," : "") << cfg[k];
        os << ")";
    } else {
        os << ";atoms=";
        for (int l : cfg)
            os << l;
    }
    return os.str();
}

bool Space::same_as(const Space& other) const
{
    const auto& a = spec_;
    const auto& b = other.spec_;
    return a.n_max == b.n_max && a.n_modes == b.n_modes && a.n_atoms == b.n_atoms && a.levels == b.levels
        && a.representation == b.representation;
}

Operator Operator::adjoint() const
{
    return {matrix.adjoint(), space, label + "^dag"};
}

namespace {
void require_same_space(const Operator& a, const Operator& b)
{
    if (!a.space || !b.space || !a.space->same_as(*b.space))
        throw ValidationError("operators act on different spaces: " + a.label + ", " + b.label);
}
} // namespace

Operator operator+(const Operator& a, const Operator& b)
{
    require_same_space(a, b);
    return {a.matrix + b.matrix, a.space, a.label + " + " + b.label};
}

Operator operator-(const Operator& a, const Operator& b)
{
    require_same_space(a, b);
    return {a.matrix - b.matrix, a.space, a.label + " - " + b.label};
}

Operator operator*(const Operator& a, const Operator& b)
{
    require_same_space(a, b);
    return {a.matrix * b.matrix, a.space, "(" + a.label + ")(" + b.label + ")"};
}

Operator operator*(Complex s, const Operator& a)
{
    return {s * a.matrix, a.space, a.label};
}

Operator identity(const SpacePtr& space)
{
    require_dense(*space);
    return {ComplexMatrix::Identity(space->dim(), space->dim()), space, "I"};
}

Operator annihilation(const SpacePtr& space, int mode)
{
    require_dense(*space);
    if (mode < 0 || mode >= space->n_modes())
        throw ValidationError("mode index " + std::to_string(mode) + " out of range");
    const std::size_t d = space->dim();
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const std::size_t stride_atoms = space->atomic_dim();
    std::size_t mode_stride = 1;
    for (int k = space->n_modes() - 1; k > mode; --k)
        mode_stride *= static_cast<std::size_t>(space->n_max() + 1);
    for (std::size_t j = 0; j < d; ++j) {
        const int n = space->photons_of(j)[mode];
        if (n == 0)
            continue;
        const std::size_t i = j - mode_stride * stride_atoms;
        m(i, j) = std::sqrt(static_cast<double>(n));
    }
    return {m, space, mode == 0 ? "a" : "b"};
}

Operator creation(const SpacePtr& space, int mode)
{
    auto a = annihilation(space, mode);
    return {a.matrix.adjoint(), space, a.label + "^dag"};
}

Operator number(const SpacePtr& space, int mode)
{
    require_dense(*space);
    if (mode < 0 || mode >= space->n_modes())
        throw ValidationError("mode index " + std::to_string(mode) + " out of range");
    const std::size_t d = space->dim();
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < d; ++j)
        m(j, j) = static_cast<double>(space->photons_of(j)[mode]);
    const std::string name = mode == 0 ? "a" : "b";
    return {m, space, name + "^dag " + name};
}

Operator collective(const SpacePtr& space, Level bra, Level ket)
{
    require_dense(*space);
    const int levels = space->levels();
    const Eigen::VectorXcd vb = level_vector(bra, levels);
    const Eigen::VectorXcd vk = level_vector(ket, levels);
    const std::size_t da = space->atomic_dim();
    ComplexMatrix atomic = ComplexMatrix::Zero(da, da);
    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            const Complex c = vb(a) * std::conj(vk(b));
            if (c != Complex(0.0))
                atomic += c * atomic_transition(*space, a, b);
        }
    }
    std::string label = "S_";
    label += level_char(bra);
    label += level_char(ket);
    return {lift_atomic(*space, atomic), space, label};
}

Operator s3(const SpacePtr& space)
{
    auto op = collective(space, Level::Plus, Level::Plus) - collective(space, Level::Minus, Level::Minus);
    op.label = "S_3";
    return op;
}

ComplexVector basis_state(const Space& space, const BasisStateSpec& spec)
{
    const std::size_t pidx = space.photon_index(spec.photons);
    const std::size_t da = space.atomic_dim();
    ComplexVector atomic = ComplexVector::Zero(da);

    if (const auto* occ = std::get_if<std::vector<int>>(&spec.atoms)) {
        if (!space.symmetric())
            throw ValidationError("occupation-count atomic specs require the symmetric representation");
        if (static_cast<int>(occ->size()) != space.levels()
            || std::accumulate(occ->begin(), occ->end(), 0) != space.n_atoms()
            || std::any_of(occ->begin(), occ->end(), [](int c) { return c < 0; }))
            throw ValidationError("occupation counts inconsistent with levels_per_atom and N");
        atomic(space.find_atomic(*occ)) = 1.0;
    } else {
        const auto& per_atom = std::get<std::vector<Level>>(spec.atoms);
        if (static_cast<int>(per_atom.size()) != space.n_atoms())
            throw ValidationError("atomic spec must list one level per atom");
        const int levels = space.levels();
        const auto product = enumerate_product(space.n_atoms(), levels);
        ComplexVector prod_state(product.size());
        std::vector<Eigen::VectorXcd> vecs;
        for (Level l : per_atom)
            vecs.push_back(level_vector(l, levels));
        for (std::size_t i = 0; i < product.size(); ++i) {
            Complex amp = 1.0;
            for (std::size_t k = 0; k < product[i].size(); ++k)
                amp *= vecs[k](product[i][k]);
            prod_state(i) = amp;
        }
        if (space.symmetric()) {
            atomic = atomic_embedding(space.n_atoms(), levels).adjoint() * prod_state;
            const double norm = atomic.norm();
            if (norm < 1e-12)
                throw ValidationError("atomic spec has no overlap with the symmetric sector");
            atomic /= norm;
        } else {
            atomic = prod_state;
        }
    }

    ComplexVector out = ComplexVector::Zero(space.dim());
    out.segment(pidx * da, da) = atomic;
    return out;
}

ComplexVector uniform_state(const Space& space, const std::vector<int>& photons, Level level)
{
    return basis_state(space, {photons, std::vector<Level>(space.n_atoms(), level)});
}

ComplexMatrix symmetric_embedding(const Space& symmetric, const Space& product)
{
    const auto& s = symmetric.spec();
    const auto& p = product.spec();
    if (!symmetric.symmetric() || product.symmetric() || s.n_max != p.n_max || s.n_modes != p.n_modes
        || s.n_atoms != p.n_atoms || s.levels != p.levels)
        throw ValidationError("symmetric_embedding needs matching symmetric and product spaces");
    return numerics::kron(ComplexMatrix::Identity(product.photon_dim(), product.photon_dim()),
                          atomic_embedding(s.n_atoms, s.levels));
}

ComplexMatrix photon_sector_projector(const Space& space, const std::vector<int>& photons)
{
    const std::size_t pidx = space.photon_index(photons);
    const std::size_t da = space.atomic_dim();
    ComplexMatrix p = ComplexMatrix::Zero(space.dim(), space.dim());
    p.block(pidx * da, pidx * da, da, da).setIdentity();
    return p;
}

} // namespace lightshift
