// Canonical text serialization for measurement patterns (version 1).
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "mbqc/pattern.hpp"

namespace mbqc {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string site_list(const SiteSet& ss) {
  if (ss.empty()) return "-";
  std::string out;
  for (const Site& s : ss) {
    if (!out.empty()) out += ",";
    out += s.str();
  }
  return out;
}

SiteSet parse_site_list(const std::string& text) {
  SiteSet ss;
  if (text == "-") return ss;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) ss.insert(Site::parse(tok));
  return ss;
}

std::string role_name(Role r) {
  switch (r) {
    case Role::Input: return "input";
    case Role::Body: return "body";
    case Role::Output: return "output";
  }
  throw std::logic_error("bad role");
}

Role parse_role(const std::string& s) {
  if (s == "input") return Role::Input;
  if (s == "body") return Role::Body;
  if (s == "output") return Role::Output;
  throw std::invalid_argument("unknown role: " + s);
}

Gen parse_gen(const std::string& s) {
  for (Gen g : {Gen::I, Gen::X, Gen::Y, Gen::Z, Gen::SqrtXp, Gen::SqrtXm,
                Gen::SqrtYp, Gen::SqrtYm, Gen::SqrtZp, Gen::SqrtZm})
    if (s == gen_name(g)) return g;
  throw std::invalid_argument("unknown generator: " + s);
}

// "key=value" -> value; throws when the key does not match.
std::string expect_kv(std::istringstream& is, const std::string& key) {
  std::string tok;
  if (!(is >> tok) || tok.rfind(key + "=", 0) != 0)
    throw std::invalid_argument("expected " + key + "=... got '" + tok + "'");
  return tok.substr(key.size() + 1);
}

std::string int_list(const std::vector<int>& v) {
  std::string out;
  for (int q : v) {
    if (!out.empty()) out += ",";
    out += std::to_string(q);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> v;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) v.push_back(std::stoi(tok));
  return v;
}

}  // namespace

std::string MeasurementPattern::to_text() const {
  std::ostringstream os;
  os << "pattern v1\n";
  os << "phi_M " << fmt17(phi_M) << "\n";
  if (!target.empty()) os << "target " << target << "\n";
  std::string in_list, out_list;
  for (const Site& s : inputs) in_list += (in_list.empty() ? "" : ",") + s.str();
  for (const Site& s : outputs)
    out_list += (out_list.empty() ? "" : ",") + s.str();
  os << "inputs " << in_list << "\n";
  os << "outputs " << out_list << "\n";
  for (const auto& n : nodes)
    os << "site " << n.site.block << " " << n.site.row << " " << n.site.col
       << " " << role_name(n.role) << " " << n.round << "\n";
  for (const auto& [a, b] : edges)
    os << "edge " << a.block << " " << a.row << " " << a.col << " " << b.block
       << " " << b.row << " " << b.col << "\n";
  for (const auto& n : nodes)
    if (n.angle)
      os << "adaptive " << n.site.str() << " sign=" << n.angle->sign
         << " phi=" << fmt17(n.angle->phi_coeff)
         << " const=" << fmt17(n.angle->const_term)
         << " deps=" << site_list(n.angle->deps) << " role=" << n.angle_role
         << "\n";
  for (std::size_t i = 0; i < outputs.size(); ++i)
    os << "byproduct " << outputs[i].str()
       << " Z=" << site_list(byproduct[i].z_deps)
       << " X=" << site_list(byproduct[i].x_deps) << "\n";
  for (const auto& [q, gens] : residual.seq) {
    os << "correction " << Site::from_label(q).str() << " ";
    for (std::size_t i = 0; i < gens.size(); ++i)
      os << (i ? "," : "") << gen_name(gens[i]);
    os << "\n";
  }
  for (const auto& op : program) {
    switch (op.kind) {
      case SymOp::Rot:
        os << "program rot axes=" << op.axes << " q=" << int_list(op.qubits)
           << " role=" << (op.role.empty() ? "-" : op.role)
           << " base=" << fmt17(op.base) << " deps=" << site_list(op.deps)
           << "\n";
        break;
      case SymOp::Swap:
        os << "program swap q=" << int_list(op.qubits) << "\n";
        break;
      case SymOp::Byp:
        os << "program byp pauli=" << op.pauli << " q=" << op.qubits.at(0)
           << " deps=" << site_list(op.deps) << "\n";
        break;
    }
  }
  return os.str();
}

MeasurementPattern MeasurementPattern::from_text(const std::string& text) {
  MeasurementPattern p;
  std::istringstream is(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag.empty() || tag[0] == '#') continue;
    if (!header_seen) {
      std::string version;
      if (tag != "pattern" || !(ls >> version) || version != "v1")
        throw std::invalid_argument("missing 'pattern v1' header");
      header_seen = true;
      continue;
    }
    if (tag == "phi_M") {
      if (!(ls >> p.phi_M)) throw std::invalid_argument("bad phi_M line");
    } else if (tag == "target") {
      std::string rest;
      std::getline(ls, rest);
      p.target = rest.empty() ? "" : rest.substr(1);
    } else if (tag == "inputs" || tag == "outputs") {
      std::string lst;
      ls >> lst;
      auto& dst = tag == "inputs" ? p.inputs : p.outputs;
      std::istringstream ts(lst);
      std::string tok;
      while (std::getline(ts, tok, ',')) dst.push_back(Site::parse(tok));
    } else if (tag == "site") {
      PatternNode n;
      std::string role;
      if (!(ls >> n.site.block >> n.site.row >> n.site.col >> role >> n.round))
        throw std::invalid_argument("bad site line: " + line);
      n.role = parse_role(role);
      n.pauli_x = n.round > 0;  // adaptive lines below clear this
      p.nodes.push_back(n);
    } else if (tag == "edge") {
      Site a, b;
      if (!(ls >> a.block >> a.row >> a.col >> b.block >> b.row >> b.col))
        throw std::invalid_argument("bad edge line: " + line);
      p.edges.insert({std::min(a, b), std::max(a, b)});
    } else if (tag == "adaptive") {
      std::string site_tok;
      ls >> site_tok;
      PatternNode* n = p.find(Site::parse(site_tok));
      if (!n) throw std::invalid_argument("adaptive line for unknown site");
      AngleExpr e;
      e.sign = std::stoi(expect_kv(ls, "sign"));
      e.phi_coeff = std::stod(expect_kv(ls, "phi"));
      e.const_term = std::stod(expect_kv(ls, "const"));
      e.deps = parse_site_list(expect_kv(ls, "deps"));
      n->angle = e;
      n->pauli_x = false;
      std::string role;
      if (ls >> role && role.rfind("role=", 0) == 0)
        n->angle_role = role.substr(5);
    } else if (tag == "byproduct") {
      std::string site_tok;
      ls >> site_tok;
      ByproductTerm t;
      t.z_deps = parse_site_list(expect_kv(ls, "Z"));
      t.x_deps = parse_site_list(expect_kv(ls, "X"));
      p.byproduct.push_back(t);
      if (p.outputs.size() < p.byproduct.size() ||
          p.outputs[p.byproduct.size() - 1] != Site::parse(site_tok))
        throw std::invalid_argument("byproduct lines must follow output order");
    } else if (tag == "correction") {
      std::string site_tok, gens;
      ls >> site_tok >> gens;
      QubitLabel q = Site::parse(site_tok).label();
      std::istringstream gs(gens);
      std::string g;
      while (std::getline(gs, g, ',')) p.residual.push_last(q, parse_gen(g));
    } else if (tag == "program") {
      std::string kind;
      ls >> kind;
      SymOp op;
      if (kind == "rot") {
        op.kind = SymOp::Rot;
        op.axes = expect_kv(ls, "axes");
        op.qubits = parse_int_list(expect_kv(ls, "q"));
        op.role = expect_kv(ls, "role");
        if (op.role == "-") op.role.clear();
        op.base = std::stod(expect_kv(ls, "base"));
        op.deps = parse_site_list(expect_kv(ls, "deps"));
      } else if (kind == "swap") {
        op.kind = SymOp::Swap;
        op.qubits = parse_int_list(expect_kv(ls, "q"));
      } else if (kind == "byp") {
        op.kind = SymOp::Byp;
        op.pauli = expect_kv(ls, "pauli").at(0);
        op.qubits = {std::stoi(expect_kv(ls, "q"))};
        op.deps = parse_site_list(expect_kv(ls, "deps"));
      } else {
        throw std::invalid_argument("unknown program op: " + kind);
      }
      p.program.push_back(op);
    } else {
      throw std::invalid_argument("unknown line tag: " + tag);
    }
  }
  if (!header_seen) throw std::invalid_argument("empty pattern file");
  p.sort_nodes();
  p.validate();
  return p;
}

}  // namespace mbqc
