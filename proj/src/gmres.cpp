#include "closelp/gmres.hpp"

#include <cmath>

namespace closelp {

GmresResult gmres(const LinearMap& apply, const Eigen::VectorXd& b, const GmresOptions& opts)
{
    const Eigen::Index n = b.size();
    GmresResult res;
    res.x = Eigen::VectorXd::Zero(n);
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }
    const int m = std::min<int>(opts.max_iter, static_cast<int>(n));
    std::vector<Eigen::VectorXd> V;
    V.reserve(m + 1);
    V.push_back(b / bnorm);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd cs(m), sn(m), g = Eigen::VectorXd::Zero(m + 1);
    g(0) = bnorm;

    Eigen::VectorXd w(n);
    int k = 0;
    for (; k < m; ++k) {
        apply(V[k], w);
        for (int i = 0; i <= k; ++i) {
            H(i, k) = V[i].dot(w);
            w -= H(i, k) * V[i];
        }
        H(k + 1, k) = w.norm();
        for (int i = 0; i < k; ++i) {
            const double t = cs(i) * H(i, k) + sn(i) * H(i + 1, k);
            H(i + 1, k) = -sn(i) * H(i, k) + cs(i) * H(i + 1, k);
            H(i, k) = t;
        }
        const double r = std::hypot(H(k, k), H(k + 1, k));
        cs(k) = H(k, k) / r;
        sn(k) = H(k + 1, k) / r;
        H(k, k) = r;
        H(k + 1, k) = 0.0;
        g(k + 1) = -sn(k) * g(k);
        g(k) = cs(k) * g(k);
        const double est = std::abs(g(k + 1)) / bnorm;
        res.history.push_back(est);
        const double hnext = w.norm();
        if (est <= opts.rtol || hnext == 0.0) {
            ++k;
            break;
        }
        V.push_back(w / hnext);
    }
    const Eigen::VectorXd y =
        H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    for (int i = 0; i < k; ++i)
        res.x += y(i) * V[i];
    res.iterations = k;
    apply(res.x, w);
    res.relative_residual = (b - w).norm() / bnorm;
    res.converged = res.history.back() <= opts.rtol;
    return res;
}

} // namespace closelp
