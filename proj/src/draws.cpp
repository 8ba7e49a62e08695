#include "tvp/draws.hpp"

#include <stdexcept>

namespace tvp {

DrawStore::DrawStore(int T, int d, bool sv_mode, bool store_paths, int capacity)
    : T_(T), d_(d), sv_mode_(sv_mode), store_paths_(store_paths) {
  beta_.resize(capacity, d);
  sqrt_theta_.resize(capacity, d);
  xi2_.resize(capacity, d);
  tau2_.resize(capacity, d);
  P0_.resize(capacity, d);
  bt_last_.resize(capacity, d);
  a_xi_.resize(capacity);
  a_tau_.resize(capacity);
  kappa2_.resize(capacity);
  lambda2_.resize(capacity);
  sigma2_.resize(capacity);
  C0_.resize(capacity);
  if (sv_mode) {
    h_.resize(capacity, T + 1);
    sv_mu_.resize(capacity);
    sv_phi_.resize(capacity);
    sv_sigma2_eta_.resize(capacity);
  }
  if (store_paths) paths_.resize(capacity, (T + 1) * d);
}

void DrawStore::push(const ChainState& s) {
  if (count_ >= beta_.rows()) throw std::runtime_error("DrawStore: capacity exceeded");
  const int m = count_++;
  beta_.row(m) = s.beta.transpose();
  sqrt_theta_.row(m) = s.sqrt_theta.transpose();
  xi2_.row(m) = s.xi2.transpose();
  tau2_.row(m) = s.tau2.transpose();
  P0_.row(m) = s.P0.transpose();
  bt_last_.row(m) = s.beta_tilde.row(T_);
  a_xi_(m) = s.a_xi;
  a_tau_(m) = s.a_tau;
  kappa2_(m) = s.kappa2;
  lambda2_(m) = s.lambda2;
  sigma2_(m) = s.sigma2;
  C0_(m) = s.C0;
  if (sv_mode_) {
    h_.row(m) = s.h.transpose();
    sv_mu_(m) = s.sv_mu;
    sv_phi_(m) = s.sv_phi;
    sv_sigma2_eta_(m) = s.sv_sigma2_eta;
  }
  if (store_paths_)
    paths_.row(m) = Eigen::Map<const Eigen::VectorXd>(s.beta_tilde.data(), (T_ + 1) * d_);
}

Eigen::MatrixXd DrawStore::beta_tilde(int m) const {
  if (!store_paths_) throw std::runtime_error("DrawStore: state paths were not stored");
  Eigen::VectorXd row = paths_.row(m);
  return Eigen::Map<const Eigen::MatrixXd>(row.data(), T_ + 1, d_);
}

Eigen::MatrixXd DrawStore::centered_path(int m) const {
  Eigen::MatrixXd bt = beta_tilde(m);
  for (int j = 0; j < d_; ++j)
    bt.col(j) = beta_(m, j) + sqrt_theta_(m, j) * bt.col(j).array();
  return bt;
}

std::vector<std::string> DrawStore::series_names() const {
  std::vector<std::string> names;
  for (int j = 1; j <= d_; ++j) names.push_back("beta_" + std::to_string(j));
  for (int j = 1; j <= d_; ++j) names.push_back("sqrt_theta_" + std::to_string(j));
  for (int j = 1; j <= d_; ++j) names.push_back("abs_sqrt_theta_" + std::to_string(j));
  for (int j = 1; j <= d_; ++j) names.push_back("xi2_" + std::to_string(j));
  for (int j = 1; j <= d_; ++j) names.push_back("tau2_" + std::to_string(j));
  for (int j = 1; j <= d_; ++j) names.push_back("P0_" + std::to_string(j));
  names.insert(names.end(), {"a_xi", "a_tau", "kappa2", "lambda2"});
  if (sv_mode_)
    names.insert(names.end(), {"sv_mu", "sv_phi", "sv_sigma2_eta"});
  else
    names.insert(names.end(), {"sigma2", "C0"});
  return names;
}

Eigen::VectorXd DrawStore::series(const std::string& name) const {
  auto indexed = [&](const std::string& prefix, const Eigen::MatrixXd& m,
                     bool absolute = false) -> Eigen::VectorXd {
    const int j = std::stoi(name.substr(prefix.size())) - 1;
    if (j < 0 || j >= d_) throw std::invalid_argument("DrawStore: no series " + name);
    Eigen::VectorXd col = m.col(j).head(count_);
    return absolute ? col.cwiseAbs().eval() : col;
  };
  if (name.rfind("abs_sqrt_theta_", 0) == 0) return indexed("abs_sqrt_theta_", sqrt_theta_, true);
  if (name.rfind("sqrt_theta_", 0) == 0) return indexed("sqrt_theta_", sqrt_theta_);
  if (name.rfind("beta_", 0) == 0) return indexed("beta_", beta_);
  if (name.rfind("xi2_", 0) == 0) return indexed("xi2_", xi2_);
  if (name.rfind("tau2_", 0) == 0) return indexed("tau2_", tau2_);
  if (name.rfind("P0_", 0) == 0) return indexed("P0_", P0_);
  if (name == "a_xi") return a_xi_.head(count_);
  if (name == "a_tau") return a_tau_.head(count_);
  if (name == "kappa2") return kappa2_.head(count_);
  if (name == "lambda2") return lambda2_.head(count_);
  if (name == "sigma2") return sigma2_.head(count_);
  if (name == "C0") return C0_.head(count_);
  if (name == "sv_mu") return sv_mu_.head(count_);
  if (name == "sv_phi") return sv_phi_.head(count_);
  if (name == "sv_sigma2_eta") return sv_sigma2_eta_.head(count_);
  throw std::invalid_argument("DrawStore: no series " + name);
}

DrawStore DrawStore::merge(const std::vector<DrawStore>& parts) {
  if (parts.empty()) return {};
  int total = 0;
  for (const auto& p : parts) total += p.size();
  DrawStore out(parts.front().T_, parts.front().d_, parts.front().sv_mode_,
                parts.front().store_paths_, total);
  for (const auto& p : parts) {
    if (p.T_ != out.T_ || p.d_ != out.d_ || p.sv_mode_ != out.sv_mode_)
      throw std::invalid_argument("DrawStore::merge: incompatible stores");
    const int m0 = out.count_;
    const int m = p.size();
    out.beta_.middleRows(m0, m) = p.beta_.topRows(m);
    out.sqrt_theta_.middleRows(m0, m) = p.sqrt_theta_.topRows(m);
    out.xi2_.middleRows(m0, m) = p.xi2_.topRows(m);
    out.tau2_.middleRows(m0, m) = p.tau2_.topRows(m);
    out.P0_.middleRows(m0, m) = p.P0_.topRows(m);
    out.bt_last_.middleRows(m0, m) = p.bt_last_.topRows(m);
    out.a_xi_.segment(m0, m) = p.a_xi_.head(m);
    out.a_tau_.segment(m0, m) = p.a_tau_.head(m);
    out.kappa2_.segment(m0, m) = p.kappa2_.head(m);
    out.lambda2_.segment(m0, m) = p.lambda2_.head(m);
    out.sigma2_.segment(m0, m) = p.sigma2_.head(m);
    out.C0_.segment(m0, m) = p.C0_.head(m);
    if (out.sv_mode_) {
      out.h_.middleRows(m0, m) = p.h_.topRows(m);
      out.sv_mu_.segment(m0, m) = p.sv_mu_.head(m);
      out.sv_phi_.segment(m0, m) = p.sv_phi_.head(m);
      out.sv_sigma2_eta_.segment(m0, m) = p.sv_sigma2_eta_.head(m);
    }
    if (out.store_paths_) out.paths_.middleRows(m0, m) = p.paths_.topRows(m);
    out.count_ += m;
  }
  return out;
}

}  // namespace tvp
