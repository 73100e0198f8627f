#include "trajtopo/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

namespace trajtopo::io {

namespace {

using nlohmann::json;

[[noreturn]] void bad_format(const std::string &what) {
  throw Error(ErrorKind::Validation, "malformed input: " + what);
}

std::vector<std::string> split_ws(const std::string &line) {
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t)
    toks.push_back(t);
  return toks;
}

long parse_int(const std::string &t) {
  long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
    bad_format("expected integer, got '" + t + "'");
  return v;
}

double parse_num(const std::string &t) {
  double v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
    bad_format("expected number, got '" + t + "'");
  return v;
}

void hash_mix(std::uint64_t &h, std::uint64_t x) {
  // FNV-1a, one byte at a time.
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, p);
}

std::uint64_t surface_hash(const CombinatorialSurface &s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  hash_mix(h, static_cast<std::uint64_t>(s.V));
  for (const auto &f : s.faces)
    for (int n : f)
      hash_mix(h, static_cast<std::uint64_t>(n));
  for (int li : s.hole_loops)
    for (int n : s.boundary_loops[li])
      hash_mix(h, static_cast<std::uint64_t>(n));
  return h;
}

std::string serialize_surface(const CombinatorialSurface &s) {
  std::string out = "surf v=" + std::to_string(s.V) +
                    " f=" + std::to_string(s.F()) +
                    " dim=" + std::to_string(s.coord_dim) + "\n";
  if (s.coord_dim > 0)
    for (int v = 0; v < s.V; ++v) {
      out += "n";
      for (int d = 0; d < s.coord_dim; ++d)
        out += " " + format_double(s.coords[v][d]);
      out += "\n";
    }
  for (const auto &f : s.faces)
    out += "t " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " +
           std::to_string(f[2]) + "\n";
  for (int li : s.hole_loops) {
    out += "hole";
    for (int n : s.boundary_loops[li])
      out += " " + std::to_string(n);
    out += "\n";
  }
  return out;
}

SurfacePtr parse_surface(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  int V = -1, F = -1, dim = 0;
  std::vector<std::array<double, 3>> coords;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::vector<int>> holes;
  while (std::getline(is, line)) {
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#')
      continue;
    if (toks[0] == "surf") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos)
          bad_format("surf header field '" + toks[i] + "'");
        auto key = toks[i].substr(0, eq);
        long val = parse_int(toks[i].substr(eq + 1));
        if (key == "v")
          V = static_cast<int>(val);
        else if (key == "f")
          F = static_cast<int>(val);
        else if (key == "dim")
          dim = static_cast<int>(val);
        else
          bad_format("unknown surf header field '" + key + "'");
      }
      if (V < 0 || F < 0 || (dim != 0 && dim != 2 && dim != 3))
        bad_format("surf header");
    } else if (toks[0] == "n") {
      if (static_cast<int>(toks.size()) != dim + 1)
        bad_format("node line arity (dim=" + std::to_string(dim) + ")");
      std::array<double, 3> c{0, 0, 0};
      for (int d = 0; d < dim; ++d)
        c[d] = parse_num(toks[1 + d]);
      coords.push_back(c);
    } else if (toks[0] == "t") {
      if (toks.size() != 4)
        bad_format("face line needs three nodes");
      faces.push_back({static_cast<int>(parse_int(toks[1])),
                       static_cast<int>(parse_int(toks[2])),
                       static_cast<int>(parse_int(toks[3]))});
    } else if (toks[0] == "hole") {
      std::vector<int> loop;
      for (std::size_t i = 1; i < toks.size(); ++i)
        loop.push_back(static_cast<int>(parse_int(toks[i])));
      if (loop.size() < 3)
        bad_format("hole loop needs at least three nodes");
      holes.push_back(std::move(loop));
    } else {
      bad_format("unknown line tag '" + toks[0] + "'");
    }
  }
  if (V < 0)
    bad_format("missing surf header");
  if (dim > 0 && static_cast<int>(coords.size()) != V)
    bad_format("expected " + std::to_string(V) + " node lines, got " +
               std::to_string(coords.size()));
  if (static_cast<int>(faces.size()) != F)
    bad_format("expected " + std::to_string(F) + " face lines, got " +
               std::to_string(faces.size()));
  auto s = build_surface(std::move(faces), std::move(coords), dim,
                         std::move(holes));
  if (s->V != V)
    bad_format("declared v=" + std::to_string(V) + " but faces reference " +
               std::to_string(s->V) + " nodes");
  return s;
}

SurfacePtr load_surface(const std::filesystem::path &p) {
  return parse_surface(read_file(p));
}

void save_surface(const CombinatorialSurface &s,
                  const std::filesystem::path &p) {
  atomic_write(p, serialize_surface(s));
}

std::string serialize_one_form(const Cochain1 &w) {
  const auto &s = *w.surface();
  std::string out = "c1 " + hex64(surface_hash(s)) + "\n";
  for (int e = 0; e < s.E(); ++e)
    out += "e " + std::to_string(s.edges[e].u) + " " +
           std::to_string(s.edges[e].v) + " " + format_double(w[e]) + "\n";
  return out;
}

Cochain1 parse_one_form(const std::string &text, const SurfacePtr &s) {
  std::istringstream is(text);
  std::string line;
  Cochain1 w(s);
  int next = 0;
  bool header = false;
  while (std::getline(is, line)) {
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#')
      continue;
    if (toks[0] == "c1") {
      if (toks.size() != 2)
        bad_format("c1 header");
      if (toks[1] != hex64(surface_hash(*s)))
        throw Error(ErrorKind::Validation,
                    "cochain was computed on a different surface (hash " +
                        toks[1] + " vs " + hex64(surface_hash(*s)) + ")");
      header = true;
    } else if (toks[0] == "e") {
      if (toks.size() != 4)
        bad_format("edge line arity");
      if (next >= s->E())
        bad_format("more edge lines than surface edges");
      int u = static_cast<int>(parse_int(toks[1]));
      int v = static_cast<int>(parse_int(toks[2]));
      if (u != s->edges[next].u || v != s->edges[next].v)
        bad_format("edge line " + std::to_string(next) +
                   " out of canonical order");
      w[next++] = parse_num(toks[3]);
    } else {
      bad_format("unknown line tag '" + toks[0] + "'");
    }
  }
  if (!header)
    bad_format("missing c1 header");
  if (next != s->E())
    bad_format("expected " + std::to_string(s->E()) + " edge lines, got " +
               std::to_string(next));
  return w;
}

Cochain1 load_one_form(const std::filesystem::path &p, const SurfacePtr &s) {
  return parse_one_form(read_file(p), s);
}

void save_one_form(const Cochain1 &w, const std::filesystem::path &p) {
  atomic_write(p, serialize_one_form(w));
}

std::string serialize_basis(const HarmonicBasis &b) {
  json j;
  if (b.forms.empty())
    throw Error(ErrorKind::Validation, "refusing to serialize an empty basis");
  j["surface"] = hex64(surface_hash(*b.forms.front().surface()));
  j["eps"] = b.eps;
  j["canonical"] = b.canonical;
  j["seeds"] = b.seeds;
  j["period_matrix"] = b.period_matrix;
  auto &forms = j["forms"] = json::array();
  for (const auto &w : b.forms)
    forms.push_back(w.values());
  return j.dump(2) + "\n";
}

HarmonicBasis parse_basis(const std::string &text, const SurfacePtr &s) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    bad_format(e.what());
  }
  if (j.value("surface", "") != hex64(surface_hash(*s)))
    throw Error(ErrorKind::Validation,
                "basis was computed on a different surface");
  HarmonicBasis b;
  b.eps = j.value("eps", 0.0);
  b.canonical = j.value("canonical", false);
  b.seeds = j.value("seeds", std::vector<std::uint64_t>{});
  b.period_matrix =
      j.value("period_matrix", std::vector<std::vector<double>>{});
  for (const auto &vals : j.at("forms")) {
    auto v = vals.get<std::vector<double>>();
    if (static_cast<int>(v.size()) != s->E())
      bad_format("basis form has " + std::to_string(v.size()) +
                 " values for " + std::to_string(s->E()) + " edges");
    b.forms.emplace_back(s, std::move(v));
  }
  if (b.forms.empty())
    bad_format("basis has no forms");
  return b;
}

HarmonicBasis load_basis(const std::filesystem::path &p, const SurfacePtr &s) {
  return parse_basis(read_file(p), s);
}

void save_basis(const HarmonicBasis &b, const std::filesystem::path &p) {
  atomic_write(p, serialize_basis(b));
}

std::string serialize_trajectories(const std::vector<Trajectory> &ts) {
  std::string out;
  for (const auto &t : ts) {
    json j;
    j["id"] = t.id;
    j["nodes"] = t.nodes;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<Trajectory> parse_trajectories(const std::string &text) {
  std::vector<Trajectory> ts;
  std::istringstream is(text);
  std::string line;
  int ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception &e) {
      bad_format("trajectory line " + std::to_string(ln) + ": " + e.what());
    }
    Trajectory t;
    t.id = j.value("id", "traj" + std::to_string(ln));
    t.nodes = j.at("nodes").get<std::vector<int>>();
    if (t.nodes.empty())
      bad_format("trajectory line " + std::to_string(ln) + " has no nodes");
    ts.push_back(std::move(t));
  }
  return ts;
}

std::vector<Trajectory> load_trajectories(const std::filesystem::path &p) {
  return parse_trajectories(read_file(p));
}

void save_trajectories(const std::vector<Trajectory> &ts,
                       const std::filesystem::path &p) {
  atomic_write(p, serialize_trajectories(ts));
}

void atomic_write(const std::filesystem::path &p, const std::string &content) {
  auto dir = p.parent_path();
  if (!dir.empty())
    std::filesystem::create_directories(dir);
  auto tmp = p;
  tmp += ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorKind::Usage, "cannot open '" + tmp.string() +
                                        "' for writing");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out)
      throw Error(ErrorKind::Usage, "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::Usage,
                "cannot move temp file onto '" + p.string() + "': " +
                    ec.message());
  }
}

std::string read_file(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Usage, "cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace trajtopo::io
