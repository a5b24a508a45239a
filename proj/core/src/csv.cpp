#include "airfilm/csv.hpp"

#include <charconv>
#include <system_error>

namespace airfilm::io {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const sim::Trajectory& traj) {
  os << "t,body_id,x,y,theta,vx,vy,omega\n";
  for (const sim::SimState& s : traj.samples) {
    for (const sim::Body2D& b : s.bodies) {
      os << format_double(s.time_s) << ',' << b.id << ',' << format_double(b.pos.x) << ','
         << format_double(b.pos.y) << ',' << format_double(b.theta_rad) << ','
         << format_double(b.vel.x) << ',' << format_double(b.vel.y) << ','
         << format_double(b.omega_rad_s) << '\n';
    }
  }
}

void write_diagnostics_csv(std::ostream& os, const sim::Trajectory& traj, Vec2 origin) {
  os << "t,px,py,L,ke\n";
  for (const sim::SimState& s : traj.samples) {
    const sim::Diagnostics d = sim::diagnostics(s, origin);
    os << format_double(s.time_s) << ',' << format_double(d.momentum.x) << ','
       << format_double(d.momentum.y) << ',' << format_double(d.angular_momentum) << ','
       << format_double(d.kinetic_energy) << '\n';
  }
}

void write_flow_curve_csv(std::ostream& os, const std::vector<flow::FlowSample>& curve) {
  os << "x_m,v_ratio\n";
  for (const flow::FlowSample& s : curve)
    os << format_double(s.x_m) << ',' << format_double(s.ratio) << '\n';
}

void write_field_csv(std::ostream& os, const flow::SurfaceVelocityField& field) {
  os << "x_m,y_m,v_ratio\n";
  for (int j = 0; j < field.ny; ++j) {
    for (int i = 0; i < field.nx; ++i) {
      const Vec2 p = field.point(i, j);
      os << format_double(p.x) << ',' << format_double(p.y) << ','
         << format_double(field.at(i, j)) << '\n';
    }
  }
}

}  // namespace airfilm::io
