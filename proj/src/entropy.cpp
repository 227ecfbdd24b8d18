#include "qdiscord/entropy.hpp"

#include <cmath>
#include <sstream>

namespace qdiscord {

EntropicIndex::EntropicIndex(double q_) : q(q_) {
    if (!(q > 0.0)) {
        std::ostringstream os;
        os << "EntropicIndex: q must be positive, got " << q_;
        throw std::domain_error(os.str());
    }
}

double tsallis_entropy(const RealVector& lambda, EntropicIndex q) {
    const RealVector clipped = clip_spectrum(lambda);
    if (q.von_neumann_branch()) {
        double s = 0.0;
        for (Index i = 0; i < clipped.size(); ++i) {
            if (clipped(i) > 0.0) s -= clipped(i) * std::log(clipped(i));
        }
        return s;
    }
    double power_sum = 0.0;
    for (Index i = 0; i < clipped.size(); ++i) {
        if (clipped(i) > 0.0) power_sum += std::pow(clipped(i), q.q);
    }
    return (1.0 - power_sum) / (q.q - 1.0);
}

double tsallis_entropy(const DensityMatrix& rho, EntropicIndex q) {
    return tsallis_entropy(rho.spectrum(), q);
}

double linear_entropy(const DensityMatrix& rho) {
    return 1.0 - (rho.matrix() * rho.matrix()).trace().real();
}

double max_entropy(Index dimension, EntropicIndex q) {
    const double d = static_cast<double>(dimension);
    if (q.von_neumann_branch()) return std::log(d);
    return (1.0 - std::pow(d, 1.0 - q.q)) / (q.q - 1.0);
}

InformationFunctional InformationFunctional::for_dimension(Index dimension, EntropicIndex q) {
    return InformationFunctional{q, max_entropy(dimension, q)};
}

double InformationFunctional::operator()(const DensityMatrix& rho) const {
    return s_max - tsallis_entropy(rho, index);
}

double information(const DensityMatrix& rho, EntropicIndex q) {
    return InformationFunctional::for_dimension(rho.dim(), q)(rho);
}

}  // namespace qdiscord
