// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

namespace rsmom {

/// Ordered key-value manifest; round-trips exactly through the kv format and
/// can also be emitted as JSON.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  const std::string* find(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  void write_kv(const std::string& path) const;
  void write_json(const std::string& path) const;
  static Manifest read_kv(const std::string& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Shortest round-trip decimal representation of a double.
std::string format_shortest(double v);

/// Surface CSV: header "x,h", 17 significant digits.
void write_surface_csv(const std::string& path, const Eigen::VectorXd& x, const Eigen::VectorXd& h);
std::pair<Eigen::VectorXd, Eigen::VectorXd> read_surface_csv(const std::string& path);

/// Field CSV: header "x,re,im" (full complex data) or "x,amp" (phaseless).
void write_field_csv(const std::string& path, const Eigen::VectorXd& x, const Eigen::VectorXcd& v);
void write_field_csv(const std::string& path, const Eigen::VectorXd& x, const Eigen::VectorXd& amp);
struct FieldCsv {
  Eigen::VectorXd x;
  bool phaseless = false;
  Eigen::VectorXcd values;
  Eigen::VectorXd amplitude;
};
FieldCsv read_field_csv(const std::string& path);

/// Loss-history CSV: header "iteration,loss".
void write_loss_csv(const std::string& path, const std::vector<double>& loss);

}  // namespace rsmom
