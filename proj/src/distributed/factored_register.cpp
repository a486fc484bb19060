// Copyright 2026 The qvote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qvote/distributed/factored_register.hpp"

#include <algorithm>
#include <string>

#include "qvote/errors.hpp"

namespace qvote::distributed {

std::size_t FactoredRegister::allocate(const StateVector& state) {
  const std::size_t first = location_.size();
  std::vector<std::size_t> qubits(state.num_qubits());
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    qubits[i] = first + i;
    location_.push_back({});
  }
  new_block(state, std::move(qubits));
  return first;
}

std::size_t FactoredRegister::new_block(StateVector state,
                                        std::vector<std::size_t> qubits) {
  std::size_t id;
  if (!free_blocks_.empty()) {
    id = free_blocks_.back();
    free_blocks_.pop_back();
  } else {
    id = blocks_.size();
    blocks_.emplace_back();
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) location_[qubits[i]] = {id, i};
  blocks_[id] = Block{std::move(state), std::move(qubits)};
  return id;
}

std::size_t FactoredRegister::largest_block() const {
  std::size_t best = 0;
  for (const auto& b : blocks_) {
    if (b) best = std::max(best, b->qubits.size());
  }
  return best;
}

std::size_t FactoredRegister::block_size(std::size_t qubit) const {
  check(qubit);
  return blocks_[location_[qubit].block]->qubits.size();
}

void FactoredRegister::check(std::size_t qubit) const {
  if (qubit >= location_.size()) {
    fail(ErrorCode::kIndex, "register has no qubit " + std::to_string(qubit));
  }
}

std::size_t FactoredRegister::merge(std::size_t a, std::size_t b) {
  if (a == b) return a;
  Block& lhs = *blocks_[a];
  Block& rhs = *blocks_[b];
  if (lhs.qubits.size() + rhs.qubits.size() > kMaxQubits) {
    fail(ErrorCode::kCapacity, "entangled cluster exceeds " +
                                   std::to_string(kMaxQubits) + " qubits");
  }
  StateVector joined = lhs.state.tensor(rhs.state);
  std::vector<std::size_t> qubits = lhs.qubits;
  qubits.insert(qubits.end(), rhs.qubits.begin(), rhs.qubits.end());
  blocks_[a].reset();
  blocks_[b].reset();
  free_blocks_.push_back(a);
  free_blocks_.push_back(b);
  return new_block(std::move(joined), std::move(qubits));
}

std::size_t FactoredRegister::gather(std::span<const std::size_t> qubits) {
  for (std::size_t q : qubits) check(q);
  std::size_t block = location_[qubits.front()].block;
  for (std::size_t q : qubits.subspan(1)) block = merge(block, location_[q].block);
  return block;
}

void FactoredRegister::apply_single(const SingleQubitUnitary& gate, std::size_t qubit) {
  check(qubit);
  const Location at = location_[qubit];
  blocks_[at.block]->state.apply_single(gate, at.local);
}

void FactoredRegister::apply_controlled(std::span<const Control> controls,
                                        std::size_t target,
                                        const SingleQubitUnitary& gate) {
  std::vector<std::size_t> involved{target};
  for (const Control& c : controls) involved.push_back(c.qubit);
  const std::size_t block = gather(involved);
  std::vector<Control> local;
  for (const Control& c : controls) local.push_back({location_[c.qubit].local, c.value});
  blocks_[block]->state.apply_controlled({local, location_[target].local}, gate);
}

double FactoredRegister::probability(std::size_t qubit, int outcome) const {
  check(qubit);
  const Location at = location_[qubit];
  return blocks_[at.block]->state.probability(at.local, outcome);
}

MeasurementRecord FactoredRegister::measure(std::size_t qubit, Rng& rng) {
  check(qubit);
  const Location at = location_[qubit];
  Block& block = *blocks_[at.block];
  MeasurementRecord record = block.state.measure(at.local, rng);
  record.qubit = qubit;
  if (block.qubits.size() > 1) {
    StateVector rest = block.state.without_qubit(at.local, record.outcome);
    std::vector<std::size_t> others = block.qubits;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(at.local));
    blocks_[at.block].reset();
    free_blocks_.push_back(at.block);
    new_block(std::move(rest), std::move(others));
    new_block(StateVector::basis(1, static_cast<std::uint64_t>(record.outcome)), {qubit});
  }
  return record;
}

std::vector<double> FactoredRegister::marginal(std::span<const std::size_t> qubits) const {
  for (std::size_t q : qubits) check(q);
  // Blocks are independent, so the joint distribution is the product of
  // per-block marginals.
  std::vector<std::size_t> order;  // distinct blocks in first-seen order
  for (std::size_t q : qubits) {
    const std::size_t b = location_[q].block;
    if (std::find(order.begin(), order.end(), b) == order.end()) order.push_back(b);
  }
  std::vector<std::vector<double>> parts;
  std::vector<std::vector<std::size_t>> positions;  // listing positions per block
  for (std::size_t b : order) {
    std::vector<std::size_t> local;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      if (location_[qubits[i]].block == b) {
        local.push_back(location_[qubits[i]].local);
        pos.push_back(i);
      }
    }
    parts.push_back(blocks_[b]->state.marginal(local));
    positions.push_back(std::move(pos));
  }
  const std::size_t width = qubits.size();
  std::vector<double> dist(std::size_t{1} << width, 1.0);
  for (std::uint64_t key = 0; key < dist.size(); ++key) {
    for (std::size_t p = 0; p < parts.size(); ++p) {
      std::uint64_t sub = 0;
      for (std::size_t i : positions[p]) sub = (sub << 1) | ((key >> (width - 1 - i)) & 1U);
      dist[key] *= parts[p][sub];
    }
  }
  return dist;
}

void FactoredRegister::swap(std::size_t a, std::size_t b) {
  check(a);
  check(b);
  if (a == b) return;
  std::swap(location_[a], location_[b]);
  blocks_[location_[a].block]->qubits[location_[a].local] = a;
  blocks_[location_[b].block]->qubits[location_[b].local] = b;
}

StateVector FactoredRegister::snapshot(std::span<const std::size_t> qubits) {
  const std::size_t id = gather(qubits);
  const Block& block = *blocks_[id];
  if (block.qubits.size() != qubits.size()) {
    fail(ErrorCode::kShape, "listed qubits share a block with unlisted ones");
  }
  const std::size_t n = qubits.size();
  std::vector<std::size_t> source(n);  // output position -> local index
  for (std::size_t i = 0; i < n; ++i) source[i] = location_[qubits[i]].local;
  std::vector<Complex> amps(std::size_t{1} << n);
  for (std::uint64_t out = 0; out < amps.size(); ++out) {
    std::uint64_t in = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = (out >> (n - 1 - i)) & 1U;
      in |= bit << (n - 1 - source[i]);
    }
    amps[out] = block.state.amplitude(in);
  }
  return StateVector::from_amplitudes(amps);
}

}  // namespace qvote::distributed
