// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#include "rsmom/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rsmom {

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw std::runtime_error(context + ": cannot parse number '" + s + "'");
  }
}

}  // namespace

std::string format_shortest(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void Manifest::set(const std::string& key, const std::string& value) {
  for (auto& e : entries_)
    if (e.first == key) {
      e.second = value;
      return;
    }
  entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) { set(key, format_shortest(value)); }
void Manifest::set(const std::string& key, long long value) { set(key, std::to_string(value)); }

const std::string* Manifest::find(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.first == key) return &e.second;
  return nullptr;
}

const std::string& Manifest::get(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw std::runtime_error("manifest: missing key '" + key + "'");
  return *v;
}

double Manifest::get_double(const std::string& key) const { return parse_double(get(key), "manifest"); }

void Manifest::write_kv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("manifest: cannot open " + path);
  for (const auto& e : entries_) f << e.first << " = " << e.second << "\n";
}

void Manifest::write_json(const std::string& path) const {
  nlohmann::ordered_json j;
  for (const auto& e : entries_) j[e.first] = e.second;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("manifest: cannot open " + path);
  f << j.dump(2) << "\n";
}

Manifest Manifest::read_kv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("manifest: cannot open " + path);
  Manifest m;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto pos = line.find(" = ");
    if (pos == std::string::npos) throw std::runtime_error("manifest: malformed line '" + line + "'");
    m.entries_.emplace_back(line.substr(0, pos), line.substr(pos + 3));
  }
  return m;
}

void write_surface_csv(const std::string& path, const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
  if (x.size() != h.size()) throw std::invalid_argument("write_surface_csv: size mismatch");
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_surface_csv: cannot open " + path);
  f << "x,h\n";
  for (Eigen::Index i = 0; i < x.size(); ++i) f << format17(x[i]) << "," << format17(h[i]) << "\n";
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> read_surface_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_surface_csv: cannot open " + path);
  std::string line;
  if (!std::getline(f, line) || split_csv_line(line) != std::vector<std::string>{"x", "h"})
    throw std::runtime_error("read_surface_csv: expected header 'x,h' in " + path);
  std::vector<double> xs, hs;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto cols = split_csv_line(line);
    if (cols.size() != 2) throw std::runtime_error("read_surface_csv: malformed row '" + line + "'");
    xs.push_back(parse_double(cols[0], path));
    hs.push_back(parse_double(cols[1], path));
  }
  Eigen::VectorXd x(static_cast<Eigen::Index>(xs.size())), h(static_cast<Eigen::Index>(hs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x[static_cast<Eigen::Index>(i)] = xs[i];
    h[static_cast<Eigen::Index>(i)] = hs[i];
  }
  return {x, h};
}

void write_field_csv(const std::string& path, const Eigen::VectorXd& x, const Eigen::VectorXcd& v) {
  if (x.size() != v.size()) throw std::invalid_argument("write_field_csv: size mismatch");
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_field_csv: cannot open " + path);
  f << "x,re,im\n";
  for (Eigen::Index i = 0; i < x.size(); ++i)
    f << format17(x[i]) << "," << format17(v[i].real()) << "," << format17(v[i].imag()) << "\n";
}

void write_field_csv(const std::string& path, const Eigen::VectorXd& x, const Eigen::VectorXd& amp) {
  if (x.size() != amp.size()) throw std::invalid_argument("write_field_csv: size mismatch");
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_field_csv: cannot open " + path);
  f << "x,amp\n";
  for (Eigen::Index i = 0; i < x.size(); ++i) f << format17(x[i]) << "," << format17(amp[i]) << "\n";
}

FieldCsv read_field_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_field_csv: cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("read_field_csv: empty file " + path);
  auto header = split_csv_line(line);
  FieldCsv out;
  if (header == std::vector<std::string>{"x", "re", "im"})
    out.phaseless = false;
  else if (header == std::vector<std::string>{"x", "amp"})
    out.phaseless = true;
  else
    throw std::runtime_error("read_field_csv: unrecognized header in " + path);

  std::vector<double> xs, re, im, amp;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto cols = split_csv_line(line);
    if (cols.size() != (out.phaseless ? 2u : 3u)) throw std::runtime_error("read_field_csv: malformed row '" + line + "'");
    xs.push_back(parse_double(cols[0], path));
    if (out.phaseless) {
      amp.push_back(parse_double(cols[1], path));
    } else {
      re.push_back(parse_double(cols[1], path));
      im.push_back(parse_double(cols[2], path));
    }
  }
  Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  out.x.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.x[i] = xs[static_cast<std::size_t>(i)];
  if (out.phaseless) {
    out.amplitude.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) out.amplitude[i] = amp[static_cast<std::size_t>(i)];
  } else {
    out.values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) out.values[i] = {re[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(i)]};
  }
  return out;
}

void write_loss_csv(const std::string& path, const std::vector<double>& loss) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_loss_csv: cannot open " + path);
  f << "iteration,loss\n";
  for (std::size_t i = 0; i < loss.size(); ++i) f << (i + 1) << "," << format17(loss[i]) << "\n";
}

}  // namespace rsmom
