#pragma once

// Boolean circuits of fan-in <= 2 and their quadratic constraint systems
// <P_j, w (x) w> = c_j over GF(2).
//
// Wires are numbered 1..N as in the circuit text format; wires 1..n are the
// inputs and wire N is the single output. Internally wire i is coordinate
// i - 1 of a BitVector.

#include <iosfwd>
#include <string>
#include <vector>

#include "nspcp/gf2.hpp"

namespace nspcp {

enum class GateKind { And, Or, Not };

struct Gate {
  GateKind kind;
  int output;               // 1-based wire index
  std::vector<int> inputs;  // 1-based; two for AND/OR, one for NOT
};

class Circuit {
 public:
  // Validates fan-in, wire ranges, that every non-input wire is driven by
  // exactly one gate, and that gates appear in topological order.
  Circuit(int inputs, int wires, std::vector<Gate> gates);

  int inputs() const { return inputs_; }
  int wires() const { return wires_; }
  const std::vector<Gate>& gates() const { return gates_; }

 private:
  int inputs_;
  int wires_;
  std::vector<Gate> gates_;
};

struct QuadraticConstraint {
  BitMatrix matrix;  // upper triangular, at most three variables
  bool value;
};

class ConstraintSystem {
 public:
  ConstraintSystem(int wires, std::vector<QuadraticConstraint> constraints);

  int wires() const { return wires_; }
  int size() const { return static_cast<int>(constraints_.size()); }
  const QuadraticConstraint& operator[](int j) const { return constraints_[j]; }
  const std::vector<QuadraticConstraint>& constraints() const { return constraints_; }

  // sum_j s_j P_j, accumulated through the sparse entries of each P_j.
  BitMatrix combine(const BitVector& selector) const;
  // sum_j s_j c_j.
  bool combined_value(const BitVector& selector) const;

  // Whether <P_j, w (x) w> = c_j for every j.
  bool satisfied_by(const BitVector& wires) const;

 private:
  int wires_;
  std::vector<QuadraticConstraint> constraints_;
  std::vector<std::vector<std::pair<int, int>>> sparse_;
};

// Honest wire values w with w_j = x_j on inputs.
BitVector evaluate(const Circuit& circuit, const BitVector& input);

// The M = N + 1 constraints: input consistency (j <= n), gate consistency
// (n < j <= N, in wire order) and the accepting-output constraint.
ConstraintSystem arithmetize(const Circuit& circuit, const BitVector& input);

// The classical linear proof M -> <M, w (x) w> over the domain {0,1}^(N x N).
class HadamardProof {
 public:
  explicit HadamardProof(const BitVector& wires);

  bool operator()(const BitMatrix& m) const { return inner(m, product_); }
  // Same function on the flattened (row-major) domain point.
  bool operator()(const BitVector& flat) const {
    return (*this)(BitMatrix::from_vector(flat, product_.dim()));
  }
  const BitMatrix& tensor_square() const { return product_; }

 private:
  BitMatrix product_;
};

HadamardProof intended_proof(const BitVector& wires);

// Text format: header "inputs n wires N", then one gate per line
// ("AND out in1 in2", "OR out in1 in2", "NOT out in1"). Blank lines and
// '#' comments are ignored. Errors carry the offending line number.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit_file(const std::string& path);
std::string format_circuit(const Circuit& circuit);

}  // namespace nspcp
