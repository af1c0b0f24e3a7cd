#include "sgwt/harness/signals.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "sgwt/errors.hpp"

namespace sgwt::harness {

Eigen::VectorXd sine_signal(const WeightedGraph& g) {
  Eigen::VectorXd f(static_cast<Eigen::Index>(g.num_nodes()));
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    const auto p = g.coord(v);
    if (!p) throw ContractError("sine_signal: node " + std::to_string(v) + " has no coordinates");
    f[static_cast<Eigen::Index>(v)] = std::sin(p->x);
  }
  return f;
}

double GaussianStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Eigen::VectorXd add_noise(const Eigen::VectorXd& f, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ParameterError("noise level sigma must be >= 0");
  GaussianStream z(seed);
  Eigen::VectorXd out = f;
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += sigma * z.next();
  return out;
}

double snr_db(const Eigen::VectorXd& reference, const Eigen::VectorXd& estimate) {
  if (reference.size() != estimate.size()) throw ContractError("snr_db: length mismatch");
  const double signal = reference.squaredNorm();
  if (!(signal > 0.0)) throw ContractError("snr_db: reference signal is zero");
  const double error = (reference - estimate).squaredNorm();
  if (error == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / error);
}

Eigen::VectorXd read_signal(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(line, &pos));
      if (line.find_first_not_of(" \t\r", pos) != std::string::npos) throw FormatError("trailing text");
    } catch (const std::exception&) {
      throw FormatError("signal line " + std::to_string(line_no) + ": expected one real, got '" + line + "'");
    }
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Eigen::VectorXd read_signal_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open signal file '" + path.string() + "'");
  return read_signal(in);
}

void write_signal(std::ostream& out, const Eigen::VectorXd& f) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < f.size(); ++i) out << f[i] << '\n';
}

}  // namespace sgwt::harness
