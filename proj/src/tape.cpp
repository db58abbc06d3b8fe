// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#include "rsmom/tape.hpp"

namespace rsmom::ad {

Var Tape::record(double v, const std::vector<Var>& parents, const std::vector<double>& partials) {
  if (parents.size() != partials.size())
    throw std::invalid_argument("record: parents/partials size mismatch");
  std::vector<std::int32_t> ids;
  std::vector<double> ws;
  ids.reserve(parents.size());
  ws.reserve(parents.size());
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (!parents[i].tracked()) continue;
    if (parents[i].tape != this) throw std::invalid_argument("record: parent from a different tape");
    ids.push_back(parents[i].id);
    ws.push_back(partials[i]);
  }
  if (ids.empty()) return Var(v);
  if (ids.size() == 1) {
    Var x;
    x.tape = this;
    x.id = push_node(v, ids[0], ws[0], kNone, 0.0);
    return x;
  }
  if (ids.size() == 2) {
    Var x;
    x.tape = this;
    x.id = push_node(v, ids[0], ws[0], ids[1], ws[1]);
    return x;
  }
  // Fall back to a single-output custom op for higher arity.
  auto outs = custom(ids, {v}, [ws](Tape& t, const CustomOp& op) {
    double a = t.adjoint(op.first_out);
    if (a == 0.0) return;
    for (std::size_t i = 0; i < op.parents.size(); ++i) t.add_adjoint(op.parents[i], a * ws[i]);
  });
  return outs[0];
}

std::vector<Var> Tape::custom(std::vector<std::int32_t> parent_ids, const std::vector<double>& out_values,
                              std::function<void(Tape&, const CustomOp&)> backward) {
  if (out_values.empty()) throw std::invalid_argument("custom: no outputs");
  CustomOp op;
  op.first_out = static_cast<std::int32_t>(nodes_.size());
  op.n_out = static_cast<std::int32_t>(out_values.size());
  op.parents = std::move(parent_ids);
  op.backward = std::move(backward);
  std::int32_t custom_idx = static_cast<std::int32_t>(custom_.size());
  custom_.push_back(std::move(op));

  std::vector<Var> outs(out_values.size());
  for (std::size_t i = 0; i < out_values.size(); ++i) {
    outs[i].tape = this;
    outs[i].id = push_node(out_values[i], kNone, 0.0, kNone, 0.0);
    outs[i].v = out_values[i];
  }
  // The reverse sweep fires the callback when it reaches the last output, at
  // which point every downstream contribution to all outputs has landed.
  nodes_.back().p0 = kCustomBase - custom_idx;
  return outs;
}

void Tape::backward(const Var& loss) {
  if (!loss.tracked() || loss.tape != this) throw std::invalid_argument("backward: loss not on this tape");
  adj_.assign(nodes_.size(), 0.0);
  adj_[static_cast<std::size_t>(loss.id)] = 1.0;
  for (std::int32_t i = loss.id; i >= 0; --i) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.p0 <= kCustomBase) {
      const CustomOp& op = custom_[static_cast<std::size_t>(kCustomBase - n.p0)];
      op.backward(*this, op);
      continue;
    }
    double a = adj_[static_cast<std::size_t>(i)];
    if (a == 0.0) continue;
    if (n.p0 >= 0) adj_[static_cast<std::size_t>(n.p0)] += a * n.w0;
    if (n.p1 >= 0) adj_[static_cast<std::size_t>(n.p1)] += a * n.w1;
  }
}

}  // namespace rsmom::ad
