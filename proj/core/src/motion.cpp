#include "relhyp/motion.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

[[noreturn]] void fail(std::string const& what) {
  throw Error(ErrorCode::kSchedule, what);
}

int face_size(Diagram const& d, int f) {
  return static_cast<int>(d.faces()[f].edges.size());
}

int wrap(int i, int n) {
  return ((i % n) + n) % n;
}

BoundaryPoint point_on(int n, int pos, Rational const& x) {
  if (x == 0) {
    return {true, wrap(pos, n), 0};
  }
  if (x == 1) {
    return {true, wrap(pos + 1, n), 0};
  }
  return {false, wrap(pos, n), x};
}

Rational offset_at(Segment const& s, Rational const& t) {
  return s.x0 + (t - s.t0) * (s.x1 - s.x0) / (s.t1 - s.t0);
}

BoundaryPoint point_at(int n, Segment const& s, Rational const& t) {
  if (s.parked) {
    return {true, s.pos, 0};
  }
  return point_on(n, s.pos, offset_at(s, t));
}

BoundaryPoint start_point(int n, Segment const& s) {
  return s.parked ? BoundaryPoint{true, s.pos, 0} : point_on(n, s.pos, s.x0);
}

BoundaryPoint end_point(int n, Segment const& s) {
  return s.parked ? BoundaryPoint{true, s.pos, 0} : point_on(n, s.pos, s.x1);
}

// Position of a car at local time tau in [0, T), given its own segments.
BoundaryPoint eval_car(int n, std::vector<Segment> const& segs, Rational const& T, Rational tau) {
  if (tau < segs.front().t0) {
    tau += T;
  }
  for (auto const& s : segs) {
    if (s.t0 <= tau && tau <= s.t1) {
      return point_at(n, s, tau);
    }
  }
  fail("time outside the schedule");
}

Rational rational_lcm(Rational const& a, Rational const& b) {
  return Rational(std::lcm(a.numerator(), b.numerator()), std::gcd(a.denominator(), b.denominator()));
}

// A segment placed on the common period [0, Tc].
struct Piece {
  int      car;
  Rational t0, t1;
  bool     parked;
  int      pos;
  Rational x0, x1;
};

std::vector<Piece> expand(Schedule const& s, Rational const& Tc) {
  std::vector<Piece> out;
  auto const         windows = (Tc / s.T).numerator();
  for (int j = 0; j < s.d; ++j) {
    for (std::int64_t r = 0; r < windows; ++r) {
      Rational shift = s.T * Rational(r);
      for (auto const& seg : s.cars[j]) {
        Piece p{j, seg.t0 + shift, seg.t1 + shift, seg.parked, seg.pos, seg.x0, seg.x1};
        if (p.t1 <= Tc) {
          out.push_back(p);
          continue;
        }
        if (p.t0 >= Tc) {
          p.t0 -= Tc;
          p.t1 -= Tc;
          out.push_back(p);
          continue;
        }
        Piece tail = p;
        if (!p.parked) {
          Rational xm = offset_at(seg, seg.t0 + (Tc - p.t0));
          p.x1        = xm;
          tail.x0     = xm;
        }
        p.t1    = Tc;
        tail.t0 = 0;
        tail.t1 -= Tc;
        if (p.t1 > p.t0) {
          out.push_back(p);
        }
        if (tail.t1 > tail.t0) {
          out.push_back(tail);
        }
      }
    }
  }
  return out;
}

struct Interval {
  Rational a, b;
};

// Closed time sets in [0, Tc) during which some car is at corner pos.
std::vector<Interval> occupancy(std::vector<Piece> const& pieces, int n, int pos, Rational const& Tc) {
  std::vector<Interval> out;
  auto add = [&](Rational a, Rational b) {
    if (a == Tc) {
      out.push_back({0, 0});
      return;
    }
    out.push_back({a, b});
    if (b == Tc) {
      out.push_back({0, 0});
    }
  };
  for (auto const& p : pieces) {
    if (p.parked) {
      if (p.pos == pos) {
        add(p.t0, p.t1);
      }
      continue;
    }
    if (p.pos == pos && p.x0 == 0) {
      add(p.t0, p.t0);
    }
    if (wrap(p.pos + 1, n) == pos && p.x1 == 1) {
      add(p.t1, p.t1);
    }
  }
  return out;
}

bool overlap(std::vector<Interval> const& u, std::vector<Interval> const& v) {
  for (auto const& x : u) {
    for (auto const& y : v) {
      if (std::max(x.a, y.a) <= std::min(x.b, y.b)) {
        return true;
      }
    }
  }
  return false;
}

bool is_stop(CornerType t) {
  return t == CornerType::kPlusPlus || t == CornerType::kMinusMinus;
}

Segment move(Rational t0, Rational t1, int pos, int n) {
  return {t0, t1, false, wrap(pos, n), 0, 1};
}

Segment park(Rational t0, Rational t1, int pos, int n) {
  return {t0, t1, true, wrap(pos, n), 0, 0};
}

// Car starting at b_0 (face position `start`) of a positive k-cell.
std::vector<Segment> positive_car(int start, int m, int n) {
  std::vector<Segment> out;
  if (m == 0) {
    out.push_back(move(0, 1, start, n));
    out.push_back(move(1, Rational(3, 2), start + 1, n));
    out.push_back(move(Rational(3, 2), 2, start + 2, n));
    return out;
  }
  for (int i = 0; i < 2 * m + 2; ++i) {
    out.push_back(move(i, i + 1, start + i, n));
  }
  int c = start + 2 * m + 2;
  out.push_back(park(2 * m + 2, 4 * m + 1, c, n));
  out.push_back(move(4 * m + 1, 4 * m + 2, c, n));
  return out;
}

// Car starting at b_0^-1 (face position `start`) of a negative k-cell.
std::vector<Segment> negative_car(int start, int m, int n) {
  std::vector<Segment> out;
  if (m == 0) {
    out.push_back(move(0, Rational(1, 2), start, n));
    out.push_back(move(Rational(1, 2), 1, start + 1, n));
    out.push_back(move(1, 2, start + 2, n));
    return out;
  }
  out.push_back(move(0, 1, start, n));
  out.push_back(park(1, 2 * m, start + 1, n));
  for (int i = 0; i < 2 * m + 2; ++i) {
    out.push_back(move(2 * m + i, 2 * m + i + 1, start + 1 + i, n));
  }
  return out;
}

// Uniform walk over `count` edges from position `from` during [t0, t0 + 2].
void sweep(std::vector<Segment>& out, Rational t0, int from, int count, int n) {
  Rational step(2, count);
  for (int i = 0; i < count; ++i) {
    out.push_back(move(t0 + step * Rational(i), t0 + step * Rational(i + 1), from + i, n));
  }
}

Schedule exterior_schedule(Diagram const& d, int f, int m) {
  int const n = face_size(d, f);
  Schedule  s{f, 1, Rational(4 * m + 2), {}};
  std::vector<Segment> car;
  if (m == 0) {
    // Corner i is reached at (1 + 6i) / 3n, never at 1/2 or 3/2, the moments
    // interior stop corners are passed.
    Rational step(2, n), phase(1, 3 * n);
    for (int i = 0; i < n; ++i) {
      car.push_back(move(phase + step * Rational(i), phase + step * Rational(i + 1), i, n));
    }
    s.cars.push_back(std::move(car));
    return s;
  }
  std::optional<int> minus, plus;
  for (int i = 0; i < n; ++i) {
    auto t = corner_type(d, {f, i});
    if (t == CornerType::kMinusMinus && !minus) {
      minus = i;
    }
    if (t == CornerType::kPlusPlus && !plus) {
      plus = i;
    }
  }
  if (!minus || !plus) {
    fail("exterior face lacks a (--) or a (++) corner");
  }
  int l1 = wrap(*plus - *minus, n);
  car.push_back(park(1, 2 * m, *minus, n));
  sweep(car, 2 * m, *minus, l1, n);
  car.push_back(park(2 * m + 2, 4 * m + 1, *plus, n));
  sweep(car, 4 * m + 1, *plus, n - l1, n);
  s.cars.push_back(std::move(car));
  return s;
}

}  // namespace

void check_schedule(Diagram const& d, Schedule const& s) {
  if (s.face < 0 || s.face >= d.face_count()) {
    fail("schedule for an unknown face");
  }
  int const n = face_size(d, s.face);
  if (s.d < 1 || static_cast<int>(s.cars.size()) != s.d || s.T <= 0) {
    fail("schedule needs d >= 1 cars and a positive period");
  }
  for (int j = 0; j < s.d; ++j) {
    auto const& segs = s.cars[j];
    if (segs.empty() || segs.front().t0 < 0 || segs.front().t0 >= s.T) {
      fail("car " + std::to_string(j) + " must start in [0, T)");
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
      auto const& g = segs[i];
      if (g.pos < 0 || g.pos >= n) {
        fail("segment position off the face");
      }
      if (g.t1 <= g.t0) {
        fail("degenerate segment");
      }
      if (!g.parked && !(0 <= g.x0 && g.x0 < g.x1 && g.x1 <= 1)) {
        fail("moves must run forward along the boundary");
      }
      if (i + 1 < segs.size()) {
        if (segs[i + 1].t0 != g.t1 || !(end_point(n, g) == start_point(n, segs[i + 1]))) {
          fail("car " + std::to_string(j) + " jumps between segments");
        }
      }
    }
    if (segs.back().t1 != segs.front().t0 + s.T) {
      fail("car " + std::to_string(j) + " does not cover one period");
    }
    auto const& next = s.cars[(j + 1) % s.d];
    if (!(end_point(n, segs.back()) == eval_car(n, next, s.T, segs.front().t0))) {
      fail("car " + std::to_string(j) + " does not hand over to the next car");
    }
  }
}

BoundaryPoint car_position(Diagram const& d, Schedule const& s, int car, Rational const& t) {
  auto r    = floor(t / s.T);
  auto base = static_cast<int>(((car + r) % s.d + s.d) % s.d);
  return eval_car(face_size(d, s.face), s.cars[base], s.T, t - s.T * Rational(r));
}

std::vector<Schedule> build_standard_schedules(Diagram const& d, RelatorCells const& cells) {
  if (cells.m < 0) {
    fail("the standard motion needs a normalized presentation");
  }
  int const m = cells.m;
  int const P = 2 * m + 3;
  std::vector<Schedule> out;
  for (int f = 0; f < d.face_count(); ++f) {
    int const n  = face_size(d, f);
    auto      fc = classify_face(d, f, cells);
    switch (fc.kind) {
      case FaceKind::kExterior:
        out.push_back(exterior_schedule(d, f, m));
        break;
      case FaceKind::kPhiCell: {
        // Starts at the (+-) corner labelled (p^phi)^-1.
        int q = 1 - fc.offset;
        out.push_back({f, 1, 2, {{move(0, 1, q, n), move(1, 2, q + 1, n)}}});
        break;
      }
      case FaceKind::kKCell: {
        int const k = n / P;
        Schedule  s{f, k, Rational(4 * m + 2), {}};
        for (int j = 0; j < k; ++j) {
          s.cars.push_back(fc.sign > 0 ? positive_car(fc.offset + 1 + j * P, m, n)
                                       : negative_car(fc.offset - 1 + j * P, m, n));
        }
        out.push_back(std::move(s));
        break;
      }
      case FaceKind::kUnknown:
        fail("face " + std::to_string(d.faces()[f].id) + " is not a relator cell");
    }
  }
  for (auto const& s : out) {
    check_schedule(d, s);
  }
  return out;
}

std::vector<Schedule> build_standard_schedules(Diagram const& d, NormalizedPresentation const& np) {
  return build_standard_schedules(d, RelatorCells::from(np));
}

Rational common_period(std::vector<Schedule> const& schedules) {
  Rational out = 0;
  for (auto const& s : schedules) {
    out = out == 0 ? s.T : rational_lcm(out, s.T);
  }
  return out;
}

StopReport check_separated_stops(Diagram const& d, std::vector<Schedule> const& schedules) {
  StopReport report;
  Rational   Tc = common_period(schedules);
  std::vector<std::vector<Piece>> pieces(d.face_count());
  for (auto const& s : schedules) {
    pieces[s.face] = expand(s, Tc);
    for (auto const& car : s.cars) {
      for (auto const& g : car) {
        if (g.parked && !is_stop(corner_type(d, {s.face, g.pos}))) {
          report.parking_ok = false;
          report.violations.push_back("face " + std::to_string(d.faces()[s.face].id) + " parks at corner " +
                                      std::to_string(g.pos) + " of type " +
                                      to_string(corner_type(d, {s.face, g.pos})));
        }
      }
    }
  }
  for (int v = 0; v < d.vertex_count(); ++v) {
    std::vector<CornerRef> stops;
    for (auto c : d.vertex_corners(v)) {
      if (is_stop(corner_type(d, c))) {
        stops.push_back(c);
      }
    }
    if (stops.empty()) {
      continue;
    }
    auto where = "vertex " + std::to_string(d.vertex_id(v));
    if (stops.size() == 1) {
      report.separated_ok = false;
      report.violations.push_back(where + " has a single stop corner");
      continue;
    }
    std::vector<std::vector<Interval>> occ;
    for (auto c : stops) {
      occ.push_back(occupancy(pieces[c.face], face_size(d, c.face), c.pos, Tc));
    }
    std::size_t const pairs = stops.size() == 2 ? 1 : stops.size();
    for (std::size_t i = 0; i < pairs; ++i) {
      if (overlap(occ[i], occ[(i + 1) % stops.size()])) {
        report.separated_ok = false;
        report.violations.push_back(where + ": neighbouring stop corners occupied at the same moment");
      }
    }
  }
  return report;
}

bool parity_holds(Diagram const& d, std::vector<Schedule> const& schedules) {
  for (auto const& s : schedules) {
    if (s.face == d.exterior()) {
      continue;
    }
    for (auto const& car : s.cars) {
      for (auto const& g : car) {
        if (g.parked) {
          continue;
        }
        auto j = floor(g.t0);
        if (g.t1 > Rational(j + 1)) {
          return false;
        }
        int want = (j % 2 != 0) ? 1 : -1;
        if (d.faces()[s.face].edges[g.pos].sign != want) {
          return false;
        }
      }
    }
  }
  return true;
}

CollisionReport simulate_collisions(Diagram const& d, std::vector<Schedule> const& schedules) {
  CollisionReport report;
  Rational const  Tc = common_period(schedules);
  report.period      = Tc;
  report.multiplicities.assign(d.face_count(), 0);
  std::vector<Schedule const*>    by_face(d.face_count(), nullptr);
  std::vector<std::vector<Piece>> pieces(d.face_count());
  for (auto const& s : schedules) {
    check_schedule(d, s);
    if (by_face[s.face] != nullptr) {
      fail("two schedules for one face");
    }
    by_face[s.face]               = &s;
    report.multiplicities[s.face] = s.d;
    pieces[s.face]                = expand(s, Tc);
  }
  for (int f = 0; f < d.face_count(); ++f) {
    if (by_face[f] == nullptr) {
      fail("face " + std::to_string(d.faces()[f].id) + " has no schedule");
    }
    report.bound += report.multiplicities[f] - 1;
  }

  // Edge points: a car walking the edge along its arrow meets one walking
  // against it.
  std::set<std::tuple<int, Rational, Rational>> edge_hits;
  for (int e = 0; e < d.edge_count(); ++e) {
    auto fwd = d.traversal(e, 1);
    auto bwd = d.traversal(e, -1);
    for (auto const& a : pieces[fwd.face]) {
      if (a.parked || a.pos != fwd.pos) {
        continue;
      }
      for (auto const& b : pieces[bwd.face]) {
        if (b.parked || b.pos != bwd.pos) {
          continue;
        }
        Rational lo = std::max(a.t0, b.t0), hi = std::min(a.t1, b.t1);
        if (lo > hi) {
          continue;
        }
        // a: x = a.x0 + va (t - a.t0); b in edge coordinates: 1 - (b.x0 + vb (t - b.t0)).
        Rational va = (a.x1 - a.x0) / (a.t1 - a.t0);
        Rational vb = (b.x1 - b.x0) / (b.t1 - b.t0);
        Rational t  = (1 - b.x0 + vb * b.t0 - a.x0 + va * a.t0) / (va + vb);
        if (t < lo || t > hi) {
          continue;
        }
        Rational x = a.x0 + va * (t - a.t0);
        if (x <= 0 || x >= 1) {
          continue;
        }
        edge_hits.insert({e, x, t == Tc ? Rational(0) : t});
      }
    }
  }
  std::map<int, std::set<Rational>> exterior_points;
  for (auto const& [e, x, t] : edge_hits) {
    CollisionEvent ev;
    ev.at_vertex    = false;
    ev.edge         = e;
    ev.offset       = x;
    ev.time         = t;
    ev.cars         = 2;
    ev.multiplicity = 2;
    ev.complete     = true;
    ev.exterior     = d.traversal(e, 1).face == d.exterior() || d.traversal(e, -1).face == d.exterior();
    report.events.push_back(ev);
    if (ev.exterior) {
      exterior_points[e].insert(x);
    }
  }
  for (auto const& [e, xs] : exterior_points) {
    if (xs.size() > 1) {
      report.exterior_edges_ok = false;
    }
  }
  std::set<std::pair<int, Rational>> edge_points;
  for (auto const& [e, x, t] : edge_hits) {
    edge_points.insert({e, x});
  }
  report.complete_points = static_cast<int>(edge_points.size());

  // Vertex points: every corner at the vertex holds a car at once.
  for (int v = 0; v < d.vertex_count(); ++v) {
    auto const& corners = d.vertex_corners(v);
    int const   deg     = static_cast<int>(corners.size());
    bool        exterior = false;
    std::set<Rational> marks{Rational(0)};
    for (auto c : corners) {
      exterior = exterior || c.face == d.exterior();
      for (auto const& iv : occupancy(pieces[c.face], face_size(d, c.face), c.pos, Tc)) {
        marks.insert(iv.a);
        marks.insert(iv.b);
      }
    }
    std::vector<Rational> samples;
    for (auto it = marks.begin(); it != marks.end(); ++it) {
      samples.push_back(*it);
      auto nx = std::next(it);
      samples.push_back((*it + (nx == marks.end() ? Tc : *nx)) / 2);
    }
    auto cars_at = [&](Rational const& t) {
      int count = 0;
      for (auto c : corners) {
        auto const& s = *by_face[c.face];
        for (int j = 0; j < s.d; ++j) {
          auto p = car_position(d, s, j, t);
          count += p.at_corner && p.pos == c.pos;
        }
      }
      return count;
    };
    std::vector<int> counts;
    for (auto const& t : samples) {
      counts.push_back(cars_at(t));
    }
    std::size_t const N = samples.size();
    std::vector<CollisionEvent> found;
    for (std::size_t i = 0; i < N; ++i) {
      bool complete = counts[i] == deg;
      bool prev     = i > 0 ? counts[i - 1] == deg : counts[N - 1] == deg;
      if (complete && !prev) {
        CollisionEvent ev;
        ev.vertex       = v;
        ev.time         = samples[i];
        ev.cars         = counts[i];
        ev.multiplicity = deg;
        ev.complete     = true;
        ev.exterior     = exterior;
        found.push_back(ev);
      }
    }
    bool always = std::all_of(counts.begin(), counts.end(), [&](int c) { return c == deg; });
    if (always) {
      CollisionEvent ev;
      ev.vertex = v, ev.time = 0, ev.cars = deg, ev.multiplicity = deg, ev.complete = true, ev.exterior = exterior;
      found.push_back(ev);
    }
    if (!found.empty()) {
      ++report.complete_points;
      report.events.insert(report.events.end(), found.begin(), found.end());
    }
  }
  std::sort(report.events.begin(), report.events.end(), [](CollisionEvent const& a, CollisionEvent const& b) {
    return std::tie(a.time, a.at_vertex, a.vertex, a.edge, a.offset) <
           std::tie(b.time, b.at_vertex, b.vertex, b.edge, b.offset);
  });
  return report;
}

bool verify_lower_bound(CollisionReport const& report) {
  return report.complete_points >= report.bound;
}

InteriorReport verify_interior_free(CollisionReport const& report, Diagram const& d) {
  InteriorReport out;
  std::set<int>  seen;
  for (auto const& ev : report.events) {
    if (!ev.complete || ev.exterior) {
      continue;
    }
    out.interior_free = false;
    if (!ev.at_vertex) {
      out.localized = false;
      out.notes.push_back("complete collision inside edge " + std::to_string(d.edges()[ev.edge].id));
      continue;
    }
    if (!seen.insert(ev.vertex).second) {
      continue;
    }
    auto kind = classify_vertex(d, ev.vertex);
    if (kind == VertexKind::kMixed) {
      out.localized = false;
      out.notes.push_back("complete collision at mixed vertex " + std::to_string(d.vertex_id(ev.vertex)));
      continue;
    }
    std::vector<FPElement> labels;
    for (auto c : d.vertex_corners(ev.vertex)) {
      labels.push_back(d.corner_label(c));
    }
    out.witnesses.emplace_back(ev.vertex, std::move(labels));
    out.notes.push_back(std::string("complete collision at ") + to_string(kind) + " vertex " +
                        std::to_string(d.vertex_id(ev.vertex)));
  }
  return out;
}

std::string format_collisions(Diagram const& d, CollisionReport const& report) {
  std::ostringstream os;
  for (auto const& ev : report.events) {
    os << "COLLISION " << (ev.exterior ? "exterior" : "interior") << ' ';
    if (ev.at_vertex) {
      os << "vertex:" << d.vertex_id(ev.vertex);
    } else {
      os << "edge:" << d.edges()[ev.edge].id << '@' << to_string(ev.offset);
    }
    os << " t=" << to_string(ev.time) << " cars=" << ev.cars << " complete=" << (ev.complete ? "true" : "false")
       << '\n';
  }
  os << "TOTAL complete_points=" << report.complete_points << " bound=" << report.bound
     << " pass=" << (verify_lower_bound(report) ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace relhyp
