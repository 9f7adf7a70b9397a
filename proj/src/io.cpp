#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "json.hpp"

namespace etri {

namespace {

[[noreturn]] void parseFail(const std::string& name, int line, const std::string& msg) {
  fail(ErrorCode::Parse, "ParseError", name + ":" + std::to_string(line) + ": " + msg);
}

// Strips comments and hands out one whitespace-tokenized line at a time.
struct LineReader {
  std::istream& in;
  std::string name;
  int line = 0;

  bool next(std::vector<std::string>& tokens) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      std::istringstream ss(raw);
      tokens.clear();
      std::string t;
      while (ss >> t) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { parseFail(name, line, msg); }
};

int parseInt(LineReader& r, const std::string& tok) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    r.fail("expected integer, got '" + tok + "'");
  }
}

double parseDouble(LineReader& r, const std::string& tok) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    r.fail("expected number, got '" + tok + "'");
  }
}

std::ifstream openFile(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Io, "FileOpen", "cannot open " + path);
  return f;
}

}  // namespace

std::string formatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SurfaceFile readEtri(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::vector<std::string> t;
  if (!r.next(t) || t.size() != 2 || t[0] != "ETRI" || t[1] != "1")
    parseFail(name, std::max(r.line, 1), "expected header 'ETRI 1'");
  if (!r.next(t) || t.size() != 2 || t[0] != "faces") r.fail("expected 'faces <F>'");
  int faceCount = parseInt(r, t[1]);

  std::vector<Gluing> gluings;
  std::vector<std::pair<int, std::string>> colours;
  while (r.next(t)) {
    if (t[0] == "glue") {
      if (t.size() != 5) r.fail("glue takes four integers");
      gluings.push_back({{parseInt(r, t[1]), parseInt(r, t[2])},
                         {parseInt(r, t[3]), parseInt(r, t[4])}});
    } else if (t[0] == "colour") {
      if (t.size() != 3) r.fail("colour takes a vertex class and a colour");
      colours.push_back({parseInt(r, t[1]), t[2]});
    } else {
      r.fail("unknown directive '" + t[0] + "'");
    }
  }

  SurfaceFile out;
  try {
    out.surface = Surface::fromGluings(faceCount, gluings);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Argument)
      parseFail(name, r.line, e.what());  // out-of-range slots in the file
    throw;
  }

  if (!colours.empty()) {
    Colouring c(out.surface.vertexCount(), Colour::MinusOne);
    std::vector<char> seen(out.surface.vertexCount(), 0);
    for (auto& [vc, colName] : colours) {
      if (vc < 0 || vc >= out.surface.vertexCount())
        parseFail(name, r.line, "colour names vertex class " + std::to_string(vc) +
                                    " of " + std::to_string(out.surface.vertexCount()));
      auto col = colourFromName(colName);
      if (!col) parseFail(name, r.line, "unknown colour '" + colName + "'");
      if (seen[vc]++)
        parseFail(name, r.line, "vertex class " + std::to_string(vc) + " coloured twice");
      c[vc] = *col;
    }
    for (int vc = 0; vc < out.surface.vertexCount(); ++vc)
      if (!seen[vc])
        parseFail(name, r.line, "vertex class " + std::to_string(vc) + " not coloured");
    if (!out.surface.isProperColouring(c))
      fail(ErrorCode::Invariant, "ImproperColouring",
           "a face sees fewer than three colours");
    out.colouring = std::move(c);
  }
  return out;
}

SurfaceFile readEtriFile(const std::string& path) {
  auto f = openFile(path);
  return readEtri(f, path);
}

void writeEtri(std::ostream& out, const Surface& s, const Colouring* colouring) {
  out << "ETRI 1\n";
  out << "faces " << s.faceCount() << "\n";
  for (const Gluing& g : s.gluings())
    out << "glue " << g.a.face << " " << g.a.side << " " << g.b.face << " "
        << g.b.side << "\n";
  if (colouring) {
    for (int vc = 0; vc < s.vertexCount(); ++vc)
      out << "colour " << vc << " " << colourName((*colouring)[vc]) << "\n";
  }
}

void writeEtriFile(const std::string& path, const Surface& s, const Colouring* colouring) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::Io, "FileOpen", "cannot open " + path + " for writing");
  writeEtri(f, s, colouring);
}

PlanarMesh readTrimesh(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::vector<std::string> t;
  if (!r.next(t) || t.size() != 2 || t[0] != "TRIMESH" || t[1] != "1")
    parseFail(name, std::max(r.line, 1), "expected header 'TRIMESH 1'");
  PlanarMesh m;
  while (r.next(t)) {
    if (t[0] == "v") {
      if (t.size() != 3) r.fail("v takes two coordinates");
      m.vertices.push_back({parseDouble(r, t[1]), parseDouble(r, t[2])});
    } else if (t[0] == "f") {
      if (t.size() != 4) r.fail("f takes three vertex indices");
      std::array<int, 3> face;
      for (int i = 0; i < 3; ++i) {
        face[i] = parseInt(r, t[i + 1]);
        if (face[i] < 0 || face[i] >= static_cast<int>(m.vertices.size()))
          r.fail("vertex index " + t[i + 1] + " out of range");
      }
      m.faces.push_back(face);
    } else {
      r.fail("unknown directive '" + t[0] + "'");
    }
  }
  return m;
}

PlanarMesh readTrimeshFile(const std::string& path) {
  auto f = openFile(path);
  return readTrimesh(f, path);
}

void writeTrimesh(std::ostream& out, const PlanarMesh& m) {
  out << "TRIMESH 1\n";
  for (Complex v : m.vertices)
    out << "v " << formatDouble(v.real()) << " " << formatDouble(v.imag()) << "\n";
  for (const auto& f : m.faces)
    out << "f " << f[0] << " " << f[1] << " " << f[2] << "\n";
}

void writeTrimeshFile(const std::string& path, const PlanarMesh& m) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::Io, "FileOpen", "cannot open " + path + " for writing");
  writeTrimesh(f, m);
}

std::array<std::vector<double>, 4> readSidePartition(std::istream& in,
                                                     const std::string& name) {
  LineReader r{in, name};
  std::vector<std::string> t;
  std::array<std::vector<double>, 4> sides;
  int current = -1;
  while (r.next(t)) {
    if (t.size() == 1 && t[0].size() == 2 && t[0][0] == 'S' &&
        t[0][1] >= '0' && t[0][1] <= '3') {
      current = t[0][1] - '0';
    } else if (t.size() == 1) {
      if (current < 0) r.fail("coordinate before any side header S0..S3");
      sides[current].push_back(parseDouble(r, t[0]));
    } else {
      r.fail("expected side header or one coordinate per line");
    }
  }
  return sides;
}

std::array<std::vector<double>, 4> readSidePartitionFile(const std::string& path) {
  auto f = openFile(path);
  return readSidePartition(f, path);
}

namespace {

nlohmann::json parseJson(std::istream& in, const std::string& name) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, "SpecParse", name + ": " + e.what());
  }
}

double numberField(const nlohmann::json& obj, const char* key,
                   const std::string& name) {
  if (!obj.contains(key) || !obj[key].is_number())
    fail(ErrorCode::Parse, "SpecParse",
         name + ": missing numeric field \"" + key + "\"");
  return obj[key].get<double>();
}

HemmedDomainSpec specFromJson(const nlohmann::json& j, const std::string& name) {
  if (!j.is_object() || !j.contains("curves") || !j["curves"].is_array())
    fail(ErrorCode::Parse, "SpecParse", name + ": expected an object with a \"curves\" array");
  HemmedDomainSpec spec;
  spec.epsilon = numberField(j, "epsilon", name);
  for (const nlohmann::json& jc : j["curves"]) {
    BoundaryCurve curve;
    curve.modulusRadius = numberField(jc, "R", name);
    curve.degree = static_cast<int>(numberField(jc, "degree", name));
    if (!jc.contains("coefficients") || !jc["coefficients"].is_array())
      fail(ErrorCode::Parse, "SpecParse", name + ": curve without \"coefficients\"");
    for (const nlohmann::json& jt : jc["coefficients"]) {
      if (!jt.is_array() || jt.size() < 2 || jt.size() > 3 ||
          !jt[0].is_number_integer())
        fail(ErrorCode::Parse, "SpecParse",
             name + ": coefficient entries are [power, re] or [power, re, im]");
      double im = jt.size() == 3 ? jt[2].get<double>() : 0.0;
      curve.coefficients.emplace_back(jt[0].get<int>(),
                                      Complex(jt[1].get<double>(), im));
    }
    spec.curves.push_back(std::move(curve));
  }
  return spec;
}

}  // namespace

HemmedDomainSpec readHemmedSpec(std::istream& in, const std::string& name) {
  return specFromJson(parseJson(in, name), name);
}

HemmedDomainSpec readHemmedSpecFile(const std::string& path) {
  auto f = openFile(path);
  return readHemmedSpec(f, path);
}

ChainSpec readChainSpec(std::istream& in, const std::string& name) {
  nlohmann::json j = parseJson(in, name);
  if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array() ||
      !j.contains("interfaces") || !j["interfaces"].is_array())
    fail(ErrorCode::Parse, "SpecParse",
         name + ": expected \"pieces\" and \"interfaces\" arrays");
  ChainSpec chain;
  for (const nlohmann::json& jp : j["pieces"])
    chain.pieces.push_back(specFromJson(jp, name));
  for (const nlohmann::json& ji : j["interfaces"]) {
    if (!ji.is_array() || ji.size() != 4)
      fail(ErrorCode::Parse, "SpecParse",
           name + ": interfaces are [pieceA, curveA, pieceB, curveB]");
    chain.interfaces.push_back({ji[0].get<int>(), ji[1].get<int>(),
                                ji[2].get<int>(), ji[3].get<int>()});
  }
  return chain;
}

ChainSpec readChainSpecFile(const std::string& path) {
  auto f = openFile(path);
  return readChainSpec(f, path);
}

}  // namespace etri
