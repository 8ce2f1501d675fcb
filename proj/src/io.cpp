#include "qcalt/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace qcalt {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error("ParseError", what);
}

std::string next_line(std::istream& is, const char* what) {
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  bad(std::string("unexpected end of input, wanted ") + what);
}

std::vector<std::uint64_t> numbers(const std::string& line, std::size_t want,
                                   const char* what) {
  std::istringstream ss(line);
  std::vector<std::uint64_t> out;
  std::uint64_t v;
  while (ss >> v) out.push_back(v);
  if (want != 0 && out.size() != want)
    bad(std::string("malformed ") + what + " line: " + line);
  return out;
}

void expect(std::istream& is, const std::string& tag) {
  std::string line = next_line(is, tag.c_str());
  if (line.substr(0, tag.size()) != tag)
    bad("expected '" + tag + "', got '" + line + "'");
}

fe element(std::uint64_t v, const FieldTower* tw, int lv, const char* what) {
  if (v >= tw->card(lv)) bad(std::string("element out of range in ") + what);
  return static_cast<fe>(v);
}

TowerPtr parse_tower_line(const std::string& line) {
  std::istringstream ss(line);
  std::string tag;
  unsigned p, s, m;
  if (!(ss >> tag >> p >> s >> m) || tag != "tower")
    bad("malformed tower line: " + line);
  return make_tower(p, s, m);
}

}  // namespace

std::string format_point(const ProjPoint& P) {
  if (P.is_infinity()) return "inf";
  return std::to_string(P.x()) + ":" + std::to_string(P.y());
}

ProjPoint parse_point(const std::string& s, const FieldTower* tw, int lv) {
  if (s == "inf") return ProjPoint::infinity(tw, lv);
  auto colon = s.find(':');
  if (colon == std::string::npos) bad("malformed point: " + s);
  std::uint64_t x = 0, y = 0;
  try {
    x = std::stoull(s.substr(0, colon));
    y = std::stoull(s.substr(colon + 1));
  } catch (const std::exception&) {
    bad("malformed point: " + s);
  }
  return ProjPoint::make(tw, lv, element(x, tw, lv, "point"),
                         element(y, tw, lv, "point"));
}

void write_matrix(std::ostream& os, const Matrix& M) {
  os << M.rows() << ' ' << M.cols() << ' ' << M.level() << '\n';
  for (std::size_t r = 0; r < M.rows(); ++r) {
    for (std::size_t c = 0; c < M.cols(); ++c)
      os << (c ? " " : "") << M.at(r, c);
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is, const FieldTower* tw) {
  auto hdr = numbers(next_line(is, "matrix header"), 3, "matrix header");
  int lv = static_cast<int>(hdr[2]);
  if (lv < 0 || lv > 3) bad("matrix level out of range");
  Matrix M(tw, lv, hdr[0], hdr[1]);
  for (std::size_t r = 0; r < M.rows(); ++r) {
    auto row = numbers(next_line(is, "matrix row"), M.cols(), "matrix row");
    for (std::size_t c = 0; c < M.cols(); ++c)
      M.at(r, c) = element(row[c], tw, lv, "matrix");
  }
  return M;
}

void write_divisor(std::ostream& os, const Divisor& G, int lv) {
  os << "divisor " << G.support().size() << ' ' << lv << '\n';
  for (const auto& [Q, m] : G.support())
    os << format_point(Q) << ' ' << m << '\n';
}

Divisor read_divisor(std::istream& is, const FieldTower* tw) {
  std::istringstream ss(next_line(is, "divisor header"));
  std::string tag;
  std::size_t count;
  int lv;
  if (!(ss >> tag >> count >> lv) || tag != "divisor" || lv < 0 || lv > 3)
    bad("malformed divisor header");
  Divisor G;
  for (std::size_t i = 0; i < count; ++i) {
    std::istringstream ln(next_line(is, "divisor entry"));
    std::string pt;
    int mult;
    if (!(ln >> pt >> mult) || mult == 0) bad("malformed divisor entry");
    G.add(parse_point(pt, tw, lv), mult);
  }
  return G;
}

void write_secret_key(std::ostream& os, const QcKeyPair& kp) {
  const FieldTower* tw = kp.spec.tower;
  os << "qcalt-secret v1\n";
  os << "tower " << tw->p() << ' ' << tw->s() << ' ' << tw->m() << '\n';
  os << "sigma " << kp.sigma.a() << ' ' << kp.sigma.b() << ' ' << kp.sigma.c()
     << ' ' << kp.sigma.d() << ' ' << kp.sigma.level() << '\n';
  os << "ell " << kp.ell << '\n';
  os << "seed " << kp.seed << '\n';
  os << "sublevel " << kp.spec.sub_level << '\n';
  os << "points " << kp.spec.points.size() << ' ' << kp.spec.level << '\n';
  for (const auto& P : kp.spec.points) os << format_point(P) << '\n';
  int dlv = kp.spec.level;
  for (const auto& [Q, m] : kp.spec.divisor.support()) dlv = Q.level();
  write_divisor(os, kp.spec.divisor, dlv);
}

QcKeyPair read_secret_key(std::istream& is, TowerPtr* tower_out) {
  expect(is, "qcalt-secret v1");
  TowerPtr tw = parse_tower_line(next_line(is, "tower"));
  if (tower_out) *tower_out = tw;
  QcKeyPair kp;
  {
    std::istringstream ss(next_line(is, "sigma"));
    std::string tag;
    std::uint64_t a, b, c, d;
    int lv;
    if (!(ss >> tag >> a >> b >> c >> d >> lv) || tag != "sigma")
      bad("malformed sigma line");
    kp.sigma = Homography::make(tw.get(), lv, element(a, tw.get(), lv, "sigma"),
                                element(b, tw.get(), lv, "sigma"),
                                element(c, tw.get(), lv, "sigma"),
                                element(d, tw.get(), lv, "sigma"));
  }
  {
    std::istringstream ss(next_line(is, "ell"));
    std::string tag;
    if (!(ss >> tag >> kp.ell) || tag != "ell") bad("malformed ell line");
  }
  {
    std::istringstream ss(next_line(is, "seed"));
    std::string tag;
    if (!(ss >> tag >> kp.seed) || tag != "seed") bad("malformed seed line");
  }
  kp.spec.tower = tw.get();
  kp.spec.flavor = CodeFlavor::Alternant;
  {
    std::istringstream ss(next_line(is, "sublevel"));
    std::string tag;
    if (!(ss >> tag >> kp.spec.sub_level) || tag != "sublevel")
      bad("malformed sublevel line");
  }
  {
    std::istringstream ss(next_line(is, "points"));
    std::string tag;
    std::size_t count;
    int lv;
    if (!(ss >> tag >> count >> lv) || tag != "points")
      bad("malformed points header");
    kp.spec.level = lv;
    for (std::size_t i = 0; i < count; ++i)
      kp.spec.points.push_back(
          parse_point(next_line(is, "point"), tw.get(), lv));
  }
  kp.spec.divisor = read_divisor(is, tw.get());
  // rebuild the public half from the secret data
  kp.pub = alternant_code(kp.spec);
  kp.pi = induced_permutation(kp.sigma, kp.spec.points);
  return kp;
}

void write_public_key(std::ostream& os, const QcKeyPair& kp) {
  const FieldTower* tw = kp.spec.tower;
  os << "qcalt-public v1\n";
  os << "tower " << tw->p() << ' ' << tw->s() << ' ' << tw->m() << '\n';
  os << "ell " << kp.ell << '\n';
  os << "seed " << kp.seed << '\n';
  os << "gen\n";
  write_matrix(os, kp.pub.gen());
  os << "pi";
  for (std::size_t i : kp.pi) os << ' ' << i;
  os << '\n';
}

PublicKeyFile read_public_key(std::istream& is) {
  expect(is, "qcalt-public v1");
  PublicKeyFile pk;
  pk.tower = parse_tower_line(next_line(is, "tower"));
  {
    std::istringstream ss(next_line(is, "ell"));
    std::string tag;
    if (!(ss >> tag >> pk.ell) || tag != "ell") bad("malformed ell line");
  }
  {
    std::istringstream ss(next_line(is, "seed"));
    std::string tag;
    if (!(ss >> tag >> pk.seed) || tag != "seed") bad("malformed seed line");
  }
  expect(is, "gen");
  pk.pub = LinearCode(read_matrix(is, pk.tower.get()));
  {
    std::istringstream ss(next_line(is, "pi"));
    std::string tag;
    if (!(ss >> tag) || tag != "pi") bad("malformed pi line");
    std::size_t v;
    while (ss >> v) pk.pi.push_back(v);
  }
  if (pk.pi.size() != pk.pub.length()) bad("pi length mismatch");
  if (pk.ell == 0 || pk.pub.length() % pk.ell != 0)
    bad("ell does not divide the length");
  return pk;
}

void write_invariant_secrets(std::ostream& os, const TowerPtr& tw,
                             const InvariantSecrets& sec) {
  os << "qcalt-invsec v1\n";
  os << "tower " << tw->p() << ' ' << tw->s() << ' ' << tw->m() << '\n';
  int lv = sec.points.empty() ? kLevelExt : sec.points[0].level();
  os << "points " << sec.points.size() << ' ' << lv << '\n';
  for (const auto& P : sec.points) os << format_point(P) << '\n';
  int dlv = lv;
  for (const auto& [Q, m] : sec.divisor.support()) dlv = Q.level();
  write_divisor(os, sec.divisor, dlv);
}

InvariantSecrets read_invariant_secrets(std::istream& is, TowerPtr* tower_out) {
  expect(is, "qcalt-invsec v1");
  TowerPtr tw = parse_tower_line(next_line(is, "tower"));
  if (tower_out) *tower_out = tw;
  InvariantSecrets sec;
  {
    std::istringstream ss(next_line(is, "points"));
    std::string tag;
    std::size_t count;
    int lv;
    if (!(ss >> tag >> count >> lv) || tag != "points")
      bad("malformed points header");
    for (std::size_t i = 0; i < count; ++i)
      sec.points.push_back(parse_point(next_line(is, "point"), tw.get(), lv));
  }
  sec.divisor = read_divisor(is, tw.get());
  return sec;
}

void write_attack_result(std::ostream& os, const TowerPtr& tw,
                         const AttackResult& res) {
  os << "qcalt-attack v1\n";
  os << "tower " << tw->p() << ' ' << tw->s() << ' ' << tw->m() << '\n';
  os << "scalar " << res.scalar.value() << ' ' << res.scalar.level() << '\n';
  int lv = res.points.empty() ? kLevelExt : res.points[0].level();
  os << "points " << res.points.size() << ' ' << lv << '\n';
  for (const auto& P : res.points) os << format_point(P) << '\n';
  int dlv = lv;
  for (const auto& [Q, m] : res.divisor.support()) dlv = Q.level();
  write_divisor(os, res.divisor, dlv);
  os << "perm";
  for (std::size_t i : res.perm) os << ' ' << i;
  os << '\n';
  os << "tried " << res.tried << ' ' << res.rejected_multi << '\n';
  os << "certificate-public\n";
  write_matrix(os, res.cert_public);
  os << "certificate-recovered\n";
  write_matrix(os, res.cert_recovered);
}

AttackResult read_attack_result(std::istream& is, TowerPtr* tower_out) {
  expect(is, "qcalt-attack v1");
  TowerPtr tw = parse_tower_line(next_line(is, "tower"));
  if (tower_out) *tower_out = tw;
  AttackResult res;
  {
    std::istringstream ss(next_line(is, "scalar"));
    std::string tag;
    std::uint64_t v;
    int lv;
    if (!(ss >> tag >> v >> lv) || tag != "scalar") bad("malformed scalar");
    res.scalar = tw->make_element(lv, element(v, tw.get(), lv, "scalar"));
  }
  {
    std::istringstream ss(next_line(is, "points"));
    std::string tag;
    std::size_t count;
    int lv;
    if (!(ss >> tag >> count >> lv) || tag != "points")
      bad("malformed points header");
    for (std::size_t i = 0; i < count; ++i)
      res.points.push_back(parse_point(next_line(is, "point"), tw.get(), lv));
  }
  res.divisor = read_divisor(is, tw.get());
  {
    std::istringstream ss(next_line(is, "perm"));
    std::string tag;
    if (!(ss >> tag) || tag != "perm") bad("malformed perm line");
    std::size_t v;
    while (ss >> v) res.perm.push_back(v);
  }
  {
    std::istringstream ss(next_line(is, "tried"));
    std::string tag;
    if (!(ss >> tag >> res.tried >> res.rejected_multi) || tag != "tried")
      bad("malformed tried line");
  }
  expect(is, "certificate-public");
  res.cert_public = read_matrix(is, tw.get());
  expect(is, "certificate-recovered");
  res.cert_recovered = read_matrix(is, tw.get());
  return res;
}

}  // namespace qcalt
