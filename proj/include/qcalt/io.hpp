#ifndef QCALT_IO_HPP
#define QCALT_IO_HPP

#include <iosfwd>
#include <string>

#include "qcalt/attack.hpp"
#include "qcalt/qckeygen.hpp"

namespace qcalt {

/// Line-oriented text formats. Field elements are the canonical integer
/// encodings; matrices are "rows cols level" followed by row lines; points
/// are "x:1" / "inf"; divisors are "divisor count level" followed by
/// "point mult" lines. Parse failures throw ParseError.

std::string format_point(const ProjPoint& P);
ProjPoint parse_point(const std::string& s, const FieldTower* tw, int lv);

void write_matrix(std::ostream& os, const Matrix& M);
Matrix read_matrix(std::istream& is, const FieldTower* tw);

void write_divisor(std::ostream& os, const Divisor& G, int lv);
Divisor read_divisor(std::istream& is, const FieldTower* tw);

void write_secret_key(std::ostream& os, const QcKeyPair& kp);
QcKeyPair read_secret_key(std::istream& is, TowerPtr* tower_out);

struct PublicKeyFile {
  TowerPtr tower;
  LinearCode pub;
  std::vector<std::size_t> pi;
  std::uint64_t ell = 0;
  std::uint64_t seed = 0;
};

void write_public_key(std::ostream& os, const QcKeyPair& kp);
PublicKeyFile read_public_key(std::istream& is);

void write_invariant_secrets(std::ostream& os, const TowerPtr& tw,
                             const InvariantSecrets& sec);
InvariantSecrets read_invariant_secrets(std::istream& is, TowerPtr* tower_out);

void write_attack_result(std::ostream& os, const TowerPtr& tw,
                         const AttackResult& res);
AttackResult read_attack_result(std::istream& is, TowerPtr* tower_out);

}  // namespace qcalt

#endif  // QCALT_IO_HPP
