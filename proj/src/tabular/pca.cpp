#include "synthaudit/tabular/pca.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "synthaudit/error.hpp"
#include "synthaudit/tabular/csv.hpp"

namespace synthaudit::tabular {

PcaState pca_fit(const Eigen::MatrixXd& x, double variance_keep) {
    if (x.rows() == 0 || x.cols() == 0) throw ValidationError("PCA input matrix is empty");
    if (!(variance_keep > 0.0 && variance_keep <= 1.0))
        throw ValidationError("PCA variance_keep must lie in (0, 1], got " + format_number(variance_keep));

    PcaState st;
    st.mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - st.mean;
    const double denom = x.rows() > 1 ? static_cast<double>(x.rows() - 1) : 1.0;
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / denom;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw Error("PCA eigendecomposition failed");
    // Eigen returns ascending eigenvalues.
    const Eigen::VectorXd evals = solver.eigenvalues().reverse();
    const Eigen::MatrixXd evecs = solver.eigenvectors().rowwise().reverse();

    const double largest = evals.size() ? evals(0) : 0.0;
    Eigen::Index usable = 0;
    if (largest > 0.0)
        while (usable < evals.size() && evals(usable) > 1e-10 * largest) ++usable;

    double total = 0.0;
    for (Eigen::Index i = 0; i < usable; ++i) total += evals(i);
    Eigen::Index k = 0;
    double cumulative = 0.0;
    while (k < usable) {
        cumulative += evals(k);
        ++k;
        if (cumulative >= variance_keep * total) break;
    }

    st.components = evecs.leftCols(k);
    st.explained_variance = evals.head(k);
    // Fix each component's sign so the largest-magnitude entry is positive.
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::Index arg = 0;
        st.components.col(j).cwiseAbs().maxCoeff(&arg);
        if (st.components(arg, j) < 0.0) st.components.col(j) *= -1.0;
    }
    return st;
}

Eigen::MatrixXd pca_transform(const Eigen::MatrixXd& x, const PcaState& state) {
    if (x.cols() != state.mean.size()) throw ValidationError("PCA transform: dimension mismatch");
    return (x.rowwise() - state.mean) * state.components;
}

Eigen::MatrixXd pca_inverse_transform(const Eigen::MatrixXd& z, const PcaState& state) {
    if (z.cols() != state.components.cols()) throw ValidationError("PCA inverse transform: dimension mismatch");
    return (z * state.components.transpose()).rowwise() + state.mean;
}

}  // namespace synthaudit::tabular
