#include "nspcp/arithmetize.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "nspcp/errors.hpp"

namespace nspcp {
namespace {

std::string wire_name(int w) { return "wire " + std::to_string(w); }

std::size_t expected_fan_in(GateKind kind) { return kind == GateKind::Not ? 1 : 2; }

const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
  }
  return "?";
}

// w_a * w_b in upper-triangular position; a == b is the square w_a.
BitMatrix add_monomial(const BitMatrix& m, int a, int b) {
  if (a > b) std::swap(a, b);
  return m.toggled(a, b);
}

}  // namespace

Circuit::Circuit(int inputs, int wires, std::vector<Gate> gates)
    : inputs_(inputs), wires_(wires), gates_(std::move(gates)) {
  if (inputs < 1 || wires < inputs) {
    throw InvalidInput("need 1 <= inputs <= wires, got inputs " + std::to_string(inputs) +
                       " wires " + std::to_string(wires));
  }
  if (wires > BitMatrix::kMaxDim) {
    throw InvalidInput("at most " + std::to_string(BitMatrix::kMaxDim) + " wires supported");
  }
  std::vector<bool> defined(wires + 1, false);
  for (int w = 1; w <= inputs; ++w) defined[w] = true;
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const Gate& gate = gates_[g];
    const std::string where = "gate " + std::to_string(g + 1) + ": ";
    if (gate.inputs.size() != expected_fan_in(gate.kind)) {
      throw InvalidInput(where + kind_name(gate.kind) + " takes " +
                         std::to_string(expected_fan_in(gate.kind)) + " inputs");
    }
    if (gate.output <= inputs || gate.output > wires) {
      throw InvalidInput(where + "output " + wire_name(gate.output) + " is not a gate wire");
    }
    if (defined[gate.output]) {
      throw InvalidInput(where + wire_name(gate.output) + " is driven twice");
    }
    for (int in : gate.inputs) {
      if (in < 1 || in > wires) throw InvalidInput(where + "input " + wire_name(in) + " out of range");
      if (!defined[in]) {
        throw InvalidInput(where + "input " + wire_name(in) + " is not computed before use");
      }
    }
    defined[gate.output] = true;
  }
  for (int w = inputs + 1; w <= wires; ++w) {
    if (!defined[w]) throw InvalidInput(wire_name(w) + " has no driving gate");
  }
}

ConstraintSystem::ConstraintSystem(int wires, std::vector<QuadraticConstraint> constraints)
    : wires_(wires), constraints_(std::move(constraints)) {
  for (const auto& c : constraints_) {
    if (c.matrix.dim() != wires_) throw InvalidInput("constraint matrix of the wrong size");
    sparse_.push_back(c.matrix.nonzeros());
  }
}

BitMatrix ConstraintSystem::combine(const BitVector& selector) const {
  if (selector.size() != size()) throw InvalidInput("selector length differs from constraint count");
  BitMatrix sum(wires_);
  for (int j = 0; j < size(); ++j) {
    if (!selector[j]) continue;
    for (auto [r, c] : sparse_[j]) sum = sum.toggled(r, c);
  }
  return sum;
}

bool ConstraintSystem::combined_value(const BitVector& selector) const {
  if (selector.size() != size()) throw InvalidInput("selector length differs from constraint count");
  bool v = false;
  for (int j = 0; j < size(); ++j) v ^= selector[j] && constraints_[j].value;
  return v;
}

bool ConstraintSystem::satisfied_by(const BitVector& wires) const {
  const BitMatrix ww = tensor(wires, wires);
  for (const auto& c : constraints_) {
    if (inner(c.matrix, ww) != c.value) return false;
  }
  return true;
}

BitVector evaluate(const Circuit& circuit, const BitVector& input) {
  if (input.size() != circuit.inputs()) {
    throw InvalidInput("input has " + std::to_string(input.size()) + " bits, circuit expects " +
                       std::to_string(circuit.inputs()));
  }
  BitVector w(circuit.wires());
  for (int i = 0; i < circuit.inputs(); ++i) w = w.with(i, input[i]);
  for (const Gate& g : circuit.gates()) {
    const bool a = w[g.inputs[0] - 1];
    bool out = false;
    switch (g.kind) {
      case GateKind::And: out = a && w[g.inputs[1] - 1]; break;
      case GateKind::Or: out = a || w[g.inputs[1] - 1]; break;
      case GateKind::Not: out = !a; break;
    }
    w = w.with(g.output - 1, out);
  }
  return w;
}

ConstraintSystem arithmetize(const Circuit& circuit, const BitVector& input) {
  if (input.size() != circuit.inputs()) {
    throw InvalidInput("input has " + std::to_string(input.size()) + " bits, circuit expects " +
                       std::to_string(circuit.inputs()));
  }
  const int n = circuit.wires();
  std::vector<QuadraticConstraint> out(n + 1, QuadraticConstraint{BitMatrix(n), false});

  for (int j = 0; j < circuit.inputs(); ++j) {
    out[j] = {BitMatrix(n).with(j, j, true), input[j]};
  }
  for (const Gate& g : circuit.gates()) {
    const int o = g.output - 1;
    const int a = g.inputs[0] - 1;
    BitMatrix p = BitMatrix(n).with(o, o, true);
    bool c = false;
    switch (g.kind) {
      case GateKind::And:
        p = add_monomial(p, a, g.inputs[1] - 1);
        break;
      case GateKind::Or: {
        const int b = g.inputs[1] - 1;
        p = add_monomial(p, a, a);
        p = add_monomial(p, b, b);
        p = add_monomial(p, a, b);
        break;
      }
      case GateKind::Not:
        p = add_monomial(p, a, a);
        c = true;
        break;
    }
    out[o] = {p, c};
  }
  out[n] = {BitMatrix(n).with(n - 1, n - 1, true), true};
  return ConstraintSystem(n, std::move(out));
}

HadamardProof::HadamardProof(const BitVector& wires) : product_(tensor(wires, wires)) {}

HadamardProof intended_proof(const BitVector& wires) { return HadamardProof(wires); }

Circuit parse_circuit(std::istream& in) {
  std::string line;
  int line_no = 0;
  int inputs = -1;
  int wires = -1;
  std::vector<Gate> gates;
  std::vector<int> gate_lines;

  auto fail = [&](const std::string& msg) -> void {
    throw InvalidInput("line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;

    if (inputs < 0) {
      std::string wires_kw;
      if (word != "inputs" || !(ls >> inputs) || !(ls >> wires_kw) || wires_kw != "wires" ||
          !(ls >> wires)) {
        fail("expected header \"inputs <n> wires <N>\"");
      }
      std::string extra;
      if (ls >> extra) fail("trailing text after header");
      continue;
    }

    Gate g{};
    if (word == "AND") {
      g.kind = GateKind::And;
    } else if (word == "OR") {
      g.kind = GateKind::Or;
    } else if (word == "NOT") {
      g.kind = GateKind::Not;
    } else {
      fail("unknown gate \"" + word + "\"");
    }
    if (!(ls >> g.output)) fail("missing output wire");
    int wire = 0;
    while (ls >> wire) g.inputs.push_back(wire);
    if (!ls.eof()) fail("wire indices must be integers");
    if (g.inputs.size() != expected_fan_in(g.kind)) {
      fail(std::string(kind_name(g.kind)) + " takes " + std::to_string(expected_fan_in(g.kind)) +
           " inputs");
    }
    for (int w : g.inputs) {
      if (w < 1 || w > wires) fail("gate references " + wire_name(w) + " outside 1.." + std::to_string(wires));
    }
    if (g.output < 1 || g.output > wires) fail("gate output " + wire_name(g.output) + " out of range");
    gates.push_back(std::move(g));
    gate_lines.push_back(line_no);
  }
  if (inputs < 0) throw InvalidInput("line " + std::to_string(line_no) + ": missing header");

  std::vector<bool> defined(wires + 1, false);
  for (int w = 1; w <= inputs && w <= wires; ++w) defined[w] = true;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    line_no = gate_lines[i];
    if (g.output <= inputs) fail("output " + wire_name(g.output) + " is an input wire");
    if (defined[g.output]) fail(wire_name(g.output) + " is driven twice");
    for (int w : g.inputs) {
      if (!defined[w]) fail("input " + wire_name(w) + " is used before it is computed (non-topological order)");
    }
    defined[g.output] = true;
  }
  return Circuit(inputs, wires, std::move(gates));
}

Circuit parse_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open circuit file " + path);
  return parse_circuit(in);
}

std::string format_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out << "inputs " << circuit.inputs() << " wires " << circuit.wires() << "\n";
  for (const Gate& g : circuit.gates()) {
    out << kind_name(g.kind) << " " << g.output;
    for (int w : g.inputs) out << " " << w;
    out << "\n";
  }
  return out.str();
}

}  // namespace nspcp
