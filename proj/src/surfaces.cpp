#include "twistcheck/surfaces.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "builtin_data.hpp"
#include "json.hpp"

namespace twistcheck {

using nlohmann::json;

const CurveData* SurfaceModel::find_curve(std::string_view n) const {
  std::string key(n);
  if (auto it = aliases.find(key); it != aliases.end()) key = it->second;
  for (const CurveData& c : curves) {
    if (c.name == key) return &c;
  }
  return nullptr;
}

const CurveData& SurfaceModel::curve(std::string_view n) const {
  const CurveData* c = find_curve(n);
  if (!c) throw Error("surface " + name + " has no curve '" + std::string(n) + "'");
  return *c;
}

std::vector<EdgeId> SurfaceModel::basis_edges() const {
  if (!graph) throw UnsupportedError("surface " + name + " has no spine");
  std::vector<EdgeId> out;
  for (const std::string& b : homology_basis) {
    auto e = graph->find_edge(b);
    if (!e) throw ModelError("homology basis names unknown edge '" + b + "'");
    out.push_back(*e);
  }
  return out;
}

std::vector<EdgeId> SurfaceModel::tree_edges() const {
  std::vector<EdgeId> basis = basis_edges();
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < graph->edge_count(); ++e) {
    if (std::find(basis.begin(), basis.end(), e) == basis.end()) out.push_back(e);
  }
  return out;
}

std::optional<int> SurfaceModel::declared_intersection(std::string_view a,
                                                       std::string_view b) const {
  const CurveData* ca = find_curve(a);
  const CurveData* cb = find_curve(b);
  if (!ca || !cb) return std::nullopt;
  if (auto it = ca->intersections.find(cb->name); it != ca->intersections.end()) return it->second;
  if (auto it = cb->intersections.find(ca->name); it != cb->intersections.end()) return it->second;
  return std::nullopt;
}

int euler_characteristic(int genus, int boundary) { return 2 - 2 * genus - boundary; }

// ---------------------------------------------------------------------------
// JSON

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ModelError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ModelError(std::string("bad field '") + key + "': " + e.what());
  }
}

HomologyClass to_class(const std::vector<long long>& v) {
  return HomologyClass(v.begin(), v.end());
}

json class_json(const HomologyClass& c) {
  json out = json::array();
  for (const Integer& x : c) out.push_back(x.convert_to<long long>());
  return out;
}

std::vector<Word> parse_table(const SpineGraph& g, const json& table, const std::string& curve,
                              const char* what) {
  std::vector<Word> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (!table.contains(edge.name)) {
      throw ModelError("curve '" + curve + "' " + what + " misses edge '" + edge.name + "'");
    }
    out.push_back(parse_word(g, table.at(edge.name).get<std::string>(), edge.source));
  }
  if (table.size() != g.edge_count()) {
    throw ModelError("curve '" + curve + "' " + what + " names unknown edges");
  }
  return out;
}

}  // namespace

SurfaceModel load_surface_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed surface file: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError("surface file is not an object");

  SurfaceModel m;
  m.name = field<std::string>(doc, "name");
  m.genus = field<int>(doc, "genus");
  m.boundary_count = field<int>(doc, "boundary_count");
  auto vertices = field<std::vector<std::string>>(doc, "vertices");
  m.homology_basis = field<std::vector<std::string>>(doc, "homology_basis");
  auto form = field<std::vector<std::vector<long long>>>(doc, "intersection_form");
  if (form.size() != m.homology_basis.size()) {
    throw ModelError("intersection form size does not match the basis");
  }
  for (const auto& row : form) {
    if (row.size() != form.size()) throw ModelError("intersection form is not square");
  }
  m.form = IntersectionForm(IntMatrix::from_rows(form));

  std::vector<Edge> edges;
  const json& jedges = doc.contains("edges") ? doc.at("edges") : json::array();
  for (const json& je : jedges) {
    auto from = std::find(vertices.begin(), vertices.end(), field<std::string>(je, "from"));
    auto to = std::find(vertices.begin(), vertices.end(), field<std::string>(je, "to"));
    if (from == vertices.end() || to == vertices.end()) {
      throw ModelError("edge '" + field<std::string>(je, "name") + "' has an unknown endpoint");
    }
    edges.push_back({field<std::string>(je, "name"), VertexId(from - vertices.begin()),
                     VertexId(to - vertices.begin())});
  }
  const json& jcurves = doc.contains("curves") ? doc.at("curves") : json::array();
  bool exact = !edges.empty();
  for (const json& jc : jcurves) {
    if (!jc.contains("twist") || jc.at("twist").empty()) exact = false;
  }
  m.level = exact ? ModelLevel::exact : ModelLevel::homology;
  if (exact) {
    auto g = std::make_shared<SpineGraph>(vertices, std::move(edges));
    m.graph = g;
    for (const json& jp : field<json>(doc, "peripheral")) {
      auto v = g->find_vertex(field<std::string>(jp, "basepoint"));
      if (!v) throw ModelError("peripheral word at unknown basepoint");
      m.peripheral.push_back({*v, parse_word(*g, field<std::string>(jp, "word"), *v)});
    }
  }

  std::set<std::string> seen;
  for (const json& jc : jcurves) {
    CurveData c;
    c.name = field<std::string>(jc, "name");
    if (!seen.insert(c.name).second) throw ModelError("duplicate curve '" + c.name + "'");
    c.is_boundary = field<bool>(jc, "is_boundary");
    c.homology = to_class(field<std::vector<long long>>(jc, "homology"));
    if (c.homology.size() != m.rank()) {
      throw ModelError("curve '" + c.name + "' homology has the wrong length");
    }
    c.intersections = field<std::map<std::string, int>>(jc, "intersections");
    if (exact) {
      auto images = parse_table(*m.graph, field<json>(jc, "twist"), c.name, "twist");
      auto inv = parse_table(*m.graph, field<json>(jc, "twist_inverse"), c.name, "twist_inverse");
      c.twist = GroupoidMorphism(m.graph, std::move(images), std::move(inv));
    }
    m.curves.push_back(std::move(c));
  }
  return m;
}

SurfaceModel load_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_surface_json(ss.str());
}

std::string save_surface_json(const SurfaceModel& m) {
  json doc;
  doc["name"] = m.name;
  doc["genus"] = m.genus;
  doc["boundary_count"] = m.boundary_count;
  doc["vertices"] = m.graph ? m.graph->vertices() : std::vector<std::string>{};
  doc["edges"] = json::array();
  doc["peripheral"] = json::array();
  if (m.graph) {
    for (const Edge& e : m.graph->edges()) {
      doc["edges"].push_back({{"name", e.name},
                              {"from", m.graph->vertex_name(e.source)},
                              {"to", m.graph->vertex_name(e.target)}});
    }
    for (const PeripheralWord& p : m.peripheral) {
      doc["peripheral"].push_back({{"basepoint", m.graph->vertex_name(p.basepoint)},
                                   {"word", format_word(*m.graph, p.word)}});
    }
  }
  doc["homology_basis"] = m.homology_basis;
  json form = json::array();
  for (std::size_t i = 0; i < m.form.dimension(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.form.dimension(); ++j) {
      row.push_back(m.form.matrix()(i, j).convert_to<long long>());
    }
    form.push_back(std::move(row));
  }
  doc["intersection_form"] = form;
  doc["curves"] = json::array();
  for (const CurveData& c : m.curves) {
    json jc;
    jc["name"] = c.name;
    jc["is_boundary"] = c.is_boundary;
    jc["homology"] = class_json(c.homology);
    jc["twist"] = json::object();
    jc["twist_inverse"] = json::object();
    if (c.twist) {
      const SpineGraph& g = c.twist->graph();
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        jc["twist"][g.edge(e).name] = format_word(g, c.twist->image(e));
        jc["twist_inverse"][g.edge(e).name] = format_word(g, c.twist->inverse_images()[e]);
      }
    }
    jc["intersections"] = c.intersections;
    doc["curves"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Builtins and the F_{k,k} family

namespace {

std::mutex cache_mutex;
std::map<std::string, std::shared_ptr<const SurfaceModel>> cache;

template <typename Make>
std::shared_ptr<const SurfaceModel> cached(const std::string& key, Make make) {
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto model = std::make_shared<const SurfaceModel>(make());
  std::lock_guard lock(cache_mutex);
  return cache.emplace(key, model).first->second;
}

std::string grid_name(int i, int j) { return std::to_string(i) + "_" + std::to_string(j); }

// Solves B x = f exactly; throws if inconsistent or non-integral.
HomologyClass solve_integral(std::vector<std::vector<Rational>> a, std::vector<Rational> f) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(f[i]);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational piv = a[r][c];
    for (auto& x : a[r]) x /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational m = a[i][c];
      for (std::size_t j = c; j <= cols; ++j) a[i][j] -= m * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][cols] != 0) throw Error("boundary face is not in the span of the grid basis");
  }
  HomologyClass x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Rational& v = a[i][cols];
    if (denominator(v) != 1) throw Error("boundary face has non-integral coordinates");
    x[pivots[i]] = numerator(v);
  }
  return x;
}

SurfaceModel make_grid(int k) {
  SurfaceModel m;
  m.name = "F_" + std::to_string(k) + "_" + std::to_string(k);
  m.genus = (k - 1) * (k - 2) / 2;
  m.boundary_count = k;
  m.level = ModelLevel::homology;
  const int n = k - 1;
  auto index = [n](int i, int j) { return std::size_t((j - 1) * n + (i - 1)); };
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) m.homology_basis.push_back(grid_name(i, j));
  }
  const std::size_t r = m.homology_basis.size();
  IntMatrix q(r, r);
  auto set = [&](int i, int j, int i2, int j2, int s) {
    if (i2 < 1 || i2 > n || j2 < 1 || j2 > n) return;
    q(index(i, j), index(i2, j2)) = s;
    q(index(i2, j2), index(i, j)) = -s;
  };
  // Neighbours in the grid meet once: vertical -1, horizontal +1, and the
  // anti-diagonal (i, j) -- (i-1, j+1) -1.
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      set(i, j, i + 1, j, -1);
      set(i, j, i, j + 1, 1);
      set(i, j, i - 1, j + 1, -1);
    }
  }
  m.form = IntersectionForm(q);

  // Boundary classes: the k faces of the K_{k,k} ribbon graph whose edges
  // e(u, v) join the u-th root of one variable to the v-th of the other; the
  // basis cycle alpha_{i,j} is the square e(i-1,j-1) - e(i,j-1) + e(i,j) - e(i-1,j).
  const std::size_t edges = std::size_t(k) * k;
  auto eidx = [k](int u, int v) { return std::size_t(((u % k + k) % k) * k + ((v % k + k) % k)); };
  std::vector<std::vector<Rational>> b(edges, std::vector<Rational>(r));
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      std::size_t c = index(i, j);
      b[eidx(i - 1, j - 1)][c] += 1;
      b[eidx(i, j - 1)][c] -= 1;
      b[eidx(i, j)][c] += 1;
      b[eidx(i - 1, j)][c] -= 1;
    }
  }
  std::vector<HomologyClass> faces;
  for (int c = 0; c < k; ++c) {
    std::vector<Rational> f(edges);
    for (int t = 0; t < k; ++t) {
      f[eidx(c - t, t)] += 1;
      f[eidx(c - t - 1, t)] -= 1;
    }
    faces.push_back(solve_integral(b, f));
  }

  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      CurveData c;
      c.name = grid_name(i, j);
      c.homology.assign(r, 0);
      c.homology[index(i, j)] = 1;
      m.curves.push_back(std::move(c));
    }
  }
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b2 = 0; b2 < r; ++b2) {
      if (a != b2) m.curves[a].intersections[m.curves[b2].name] = int(abs(q(a, b2)));
    }
  }
  for (int c = 0; c < k; ++c) {
    CurveData bd;
    bd.name = "b" + std::to_string(c + 1);
    bd.is_boundary = true;
    bd.homology = faces[c];
    m.curves.push_back(std::move(bd));
  }
  for (std::size_t a = 0; a < m.curves.size(); ++a) {
    for (std::size_t b2 = 0; b2 < m.curves.size(); ++b2) {
      if (a == b2) continue;
      if (m.curves[a].is_boundary || m.curves[b2].is_boundary) {
        m.curves[a].intersections[m.curves[b2].name] = 0;
      }
    }
  }
  return m;
}

}  // namespace

std::vector<std::string> builtin_names() { return detail::builtin_surface_names(); }

std::shared_ptr<const SurfaceModel> builtin(std::string_view name) {
  std::string key(name);
  auto text = detail::builtin_surface_json(key);
  if (!text) throw Error("unknown builtin surface '" + key + "'");
  return cached("builtin:" + key, [&] { return load_surface_json(*text); });
}

std::shared_ptr<const SurfaceModel> grid_surface(int k) {
  if (k < 2) throw Error("F_{k,k} needs k >= 2");
  return cached("grid:" + std::to_string(k), [k] { return make_grid(k); });
}

std::shared_ptr<const SurfaceModel> chain_surface(int k, ModelLevel level) {
  if (k < 2) throw Error("F_{k,k} needs k >= 2");
  if (level == ModelLevel::homology && k >= 4) return grid_surface(k);
  if (k >= 4) {
    throw UnsupportedError("exact model of F_" + std::to_string(k) + "_" + std::to_string(k) +
                           " is not available (exact level exists for k = 2, 3)");
  }
  return cached("chain:" + std::to_string(k), [k] {
    SurfaceModel m = *builtin(k == 2 ? "annulus" : "S_1_3");
    m.name = "F_" + std::to_string(k) + "_" + std::to_string(k);
    if (k == 2) {
      m.aliases = {{"1_1", "core"}};
    } else {
      // D1_2 D2_2 D1_1 D2_1 reads as Dr Dp Db Dg.
      m.aliases = {{"1_1", "b"}, {"1_2", "r"}, {"2_1", "g"}, {"2_2", "p"}};
    }
    return m;
  });
}

std::shared_ptr<const SurfaceModel> resolve_surface(std::string_view name) {
  std::string key(name);
  if (detail::builtin_surface_json(key)) return builtin(key);
  if (key.size() > 5 && key.substr(key.size() - 5) == ".json") {
    return std::make_shared<const SurfaceModel>(load_surface_file(key));
  }
  int k1 = 0, k2 = 0;
  char tail = 0;
  if (std::sscanf(key.c_str(), "F_%d_%d%c", &k1, &k2, &tail) == 2 && k1 == k2 &&
      key == "F_" + std::to_string(k1) + "_" + std::to_string(k2)) {
    return chain_surface(k1, k1 <= 3 ? ModelLevel::exact : ModelLevel::homology);
  }
  throw Error("unknown surface '" + key + "'");
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<const CheckResult*> ValidationReport::failures() const {
  std::vector<const CheckResult*> out;
  for (const CheckResult& c : checks) {
    if (!c.passed) out.push_back(&c);
  }
  return out;
}

namespace {

class Checker {
 public:
  explicit Checker(ValidationReport& r) : report_(r) {}

  void add(std::string check, std::string subject, bool ok, std::string witness = {}) {
    report_.checks.push_back(
        {std::move(check), std::move(subject), ok, ok ? std::string() : std::move(witness)});
  }

 private:
  ValidationReport& report_;
};

std::string pair_name(const CurveData& a, const CurveData& b) { return a.name + "," + b.name; }

void validate_homology(const SurfaceModel& m, Checker& ck) {
  const IntersectionForm& q = m.form;
  std::size_t expected = std::size_t(2 * m.genus + m.boundary_count - 1);
  ck.add("rank", "", m.rank() == expected && q.dimension() == m.rank(),
         "basis size " + std::to_string(m.rank()) + ", form dimension " +
             std::to_string(q.dimension()) + ", expected 2g+b-1 = " + std::to_string(expected));
  std::size_t form_rank = q.matrix().rank();
  ck.add("form", "", form_rank == std::size_t(2 * m.genus),
         "form rank " + std::to_string(form_rank) + ", expected 2g = " +
             std::to_string(2 * m.genus));

  HomologyClass sum(m.rank());
  int boundaries = 0;
  for (const CurveData& c : m.curves) {
    if (!c.is_boundary) continue;
    ++boundaries;
    for (std::size_t i = 0; i < sum.size() && i < c.homology.size(); ++i) sum[i] += c.homology[i];
    ck.add("boundary_radical", c.name, q.in_radical(c.homology),
           "Q * " + format_class(c.homology) + " = " + format_class(q.matrix() * c.homology));
  }
  bool zero = std::all_of(sum.begin(), sum.end(), [](const Integer& x) { return x == 0; });
  ck.add("boundary_sum", "", zero && boundaries == m.boundary_count,
         std::to_string(boundaries) + " boundary curves summing to " + format_class(sum));

  for (const CurveData& c : m.curves) {
    for (const auto& [other, value] : c.intersections) {
      const CurveData* o = m.find_curve(other);
      if (!o) {
        ck.add("intersections", c.name, false, "names unknown curve '" + other + "'");
        continue;
      }
      auto back = o->intersections.find(c.name);
      bool symmetric = back == o->intersections.end() || back->second == value;
      Integer alg = abs(q.pair(c.homology, o->homology));
      bool consistent = value >= 0 && alg <= value && (Integer(value) - alg) % 2 == 0;
      ck.add("intersections", pair_name(c, *o), symmetric && consistent,
             "declared " + std::to_string(value) + ", algebraic " + alg.str() +
                 (symmetric ? "" : ", asymmetric declaration"));
    }
  }
}

void validate_relations(const SurfaceModel& m, Checker& ck) {
  for (std::size_t a = 0; a < m.curves.size(); ++a) {
    for (std::size_t b = a + 1; b < m.curves.size(); ++b) {
      const CurveData& ca = m.curves[a];
      const CurveData& cb = m.curves[b];
      auto i = m.declared_intersection(ca.name, cb.name);
      if (!i || (*i != 0 && *i != 1)) continue;
      const char* check = *i == 0 ? "commutation" : "braid";
      if (m.is_exact()) {
        const GroupoidMorphism& x = *ca.twist;
        const GroupoidMorphism& y = *cb.twist;
        GroupoidMorphism lhs = *i == 0 ? compose(x, y) : compose(compose(x, y), x);
        GroupoidMorphism rhs = *i == 0 ? compose(y, x) : compose(compose(y, x), y);
        auto diff = first_difference(lhs, rhs);
        std::string witness;
        if (diff) {
          const SpineGraph& g = *m.graph;
          witness = "edge " + g.edge(*diff).name + ": " + format_word(g, lhs.image(*diff)) +
                    " vs " + format_word(g, rhs.image(*diff));
        }
        ck.add(check, pair_name(ca, cb), !diff, witness);
      } else {
        IntMatrix x = transvection(ca.homology, m.form);
        IntMatrix y = transvection(cb.homology, m.form);
        bool ok = *i == 0 ? x * y == y * x : x * y * x == y * x * y;
        ck.add(check, pair_name(ca, cb), ok, "transvection products differ");
      }
    }
  }
}

void validate_exact(const SurfaceModel& m, Checker& ck) {
  const SpineGraph& g = *m.graph;
  int v = int(g.vertex_count()), e = int(g.edge_count());
  ck.add("euler", "", v - e == euler_characteristic(m.genus, m.boundary_count),
         "V - E = " + std::to_string(v - e) + ", 2 - 2g - b = " +
             std::to_string(euler_characteristic(m.genus, m.boundary_count)));
  ck.add("connected", "", g.connected(), "spine graph is disconnected");
  ck.add("vertices", "", v == m.boundary_count,
         std::to_string(v) + " basepoints for " + std::to_string(m.boundary_count) +
             " boundary components");

  std::vector<EdgeId> basis, tree;
  bool basis_ok = true;
  std::string why;
  try {
    basis = m.basis_edges();
    tree = m.tree_edges();
    std::set<EdgeId> distinct(basis.begin(), basis.end());
    if (distinct.size() != basis.size()) throw Error("basis repeats an edge");
    loop_basis(g, 0, tree);
  } catch (const Error& err) {
    basis_ok = false;
    why = err.what();
  }
  ck.add("basis", "", basis_ok, why);
  ck.add("loop_rank", "", e - v + 1 == 2 * m.genus + m.boundary_count - 1,
         "E - V + 1 = " + std::to_string(e - v + 1));

  std::vector<bool> seen(g.vertex_count(), false);
  for (const PeripheralWord& p : m.peripheral) {
    std::string at = g.vertex_name(p.basepoint);
    bool ok = p.word.is_loop() && p.word.source() == p.basepoint && is_reduced(p.word) &&
              !cyclic_reduce(g, p.word).empty() && !seen[p.basepoint];
    seen[p.basepoint] = true;
    ck.add("peripheral_reduced", at, ok, "\"" + format_word(g, p.word) + "\"");
  }
  bool all_seen = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  ck.add("peripheral_reduced", "", all_seen, "some basepoint has no peripheral word");

  for (const CurveData& c : m.curves) {
    const GroupoidMorphism& phi = *c.twist;
    ck.add("inverse", c.name, inverse_is_valid(phi), "twist_inverse is not a two-sided inverse");
    if (basis_ok && c.homology.size() == m.rank() && m.form.dimension() == m.rank()) {
      IntMatrix ab = abelianization_matrix(phi, 0, tree, basis);
      IntMatrix tv = transvection(c.homology, m.form);
      ck.add("abelianization", c.name, ab == tv,
             "abelianized table " + ab.to_string() + " vs transvection " + tv.to_string());
    }
    for (const PeripheralWord& p : m.peripheral) {
      Word img = apply(phi, p.word);
      ck.add("peripheral", c.name + "@" + g.vertex_name(p.basepoint), img == p.word,
             "\"" + format_word(g, p.word) + "\" -> \"" + format_word(g, img) + "\"");
    }
  }
}

}  // namespace

ValidationReport validate(const SurfaceModel& m) {
  ValidationReport report;
  report.surface = m.name;
  Checker ck(report);
  try {
    if (m.is_exact()) validate_exact(m, ck);
    validate_homology(m, ck);
    validate_relations(m, ck);
  } catch (const Error& e) {
    ck.add("structure", "", false, e.what());
  }
  return report;
}

}  // namespace twistcheck
