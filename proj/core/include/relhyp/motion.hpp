#ifndef RELHYP_MOTION_HPP_
#define RELHYP_MOTION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "relhyp/diagram.hpp"
#include "relhyp/rational.hpp"

namespace relhyp {

// One piece of a car's trajectory on [t0, t1]. A parked car sits at corner
// `pos`; a moving car walks traversal `pos` of its face from boundary offset
// x0 to x1 (0 = the corner before the edge, 1 = the corner after it) at
// constant speed.
struct Segment {
  Rational t0, t1;
  bool     parked = false;
  int      pos    = 0;
  Rational x0 = 0, x1 = 0;
};

// d cars on the boundary of one face. Car j's segments are contiguous and
// cover one period starting at segments.front().t0 in [0, T); the last one
// may run past T and wraps. At time T car j stands where car j+1 starts.
struct Schedule {
  int                               face = 0;
  int                               d    = 1;
  Rational                          T    = 1;
  std::vector<std::vector<Segment>> cars;
};

// Where a car is: at a corner, or strictly inside traversal `pos`.
struct BoundaryPoint {
  bool     at_corner = true;
  int      pos       = 0;
  Rational x         = 0;

  bool operator==(BoundaryPoint const&) const = default;
};

// Throws kSchedule for gaps, zero-length or backward moves, U-turns, parking
// off corners or broken periodicity.
void check_schedule(Diagram const& d, Schedule const& s);

// Position of car j at any rational time, using car j+1 after one period.
BoundaryPoint car_position(Diagram const& d, Schedule const& s, int car, Rational const& t);

// The standard motion: one schedule per face in face order. For m > 0 the
// exterior face needs a (--) and a (++) corner; the first of each in boundary
// order is used. Throws kSchedule when a corner is missing or a face is not a
// relator cell.
std::vector<Schedule> build_standard_schedules(Diagram const& d, RelatorCells const& cells);
std::vector<Schedule> build_standard_schedules(Diagram const& d, NormalizedPresentation const& np);

// Least common multiple of all periods.
Rational common_period(std::vector<Schedule> const& schedules);

struct StopReport {
  bool                     parking_ok   = true;  // parks only at (++)/(--) corners
  bool                     separated_ok = true;  // neighbouring stop corners never share a moment
  std::vector<std::string> violations;

  bool pass() const {
    return parking_ok && separated_ok;
  }
};

StopReport check_separated_stops(Diagram const& d, std::vector<Schedule> const& schedules);

// Interior cars on edges move along the edge arrow when the integer part of
// the time is odd and against it when it is even.
bool parity_holds(Diagram const& d, std::vector<Schedule> const& schedules);

struct CollisionEvent {
  bool     at_vertex = true;
  int      vertex    = -1;  // vertex index
  int      edge      = -1;  // edge index, offset measured along the arrow
  Rational offset    = 0;
  Rational time      = 0;
  int      cars      = 0;
  int      multiplicity = 0;
  bool     complete  = false;
  bool     exterior  = false;  // on the boundary of the exterior face
};

struct CollisionReport {
  Rational                    period = 0;
  std::vector<CollisionEvent> events;  // sorted by time, then location
  int                         complete_points = 0;
  std::vector<int>            multiplicities;  // d_i per face, exterior included
  int                         bound = 2;       // 2 + sum (d_i - 1)
  // No exterior edge carries two complete-collision points.
  bool exterior_edges_ok = true;
};

// Exact enumeration of complete collisions over one common period. Each
// event is the first moment of a maximal run of complete collision at its
// point; points are counted once however many runs they host.
CollisionReport simulate_collisions(Diagram const& d, std::vector<Schedule> const& schedules);

bool verify_lower_bound(CollisionReport const& report);

struct InteriorReport {
  bool interior_free = true;  // no complete collision off the exterior boundary
  bool localized     = true;  // every interior one sits at a sink or a source
  // Interior collision vertices with their corner labels clockwise; the
  // product of each list is trivial.
  std::vector<std::pair<int, std::vector<FPElement>>> witnesses;
  std::vector<std::string>                            notes;
};

InteriorReport verify_interior_free(CollisionReport const& report, Diagram const& d);

// "COLLISION ..." lines followed by "TOTAL complete_points=N bound=M pass=B".
std::string format_collisions(Diagram const& d, CollisionReport const& report);

}  // namespace relhyp

#endif  // RELHYP_MOTION_HPP_
