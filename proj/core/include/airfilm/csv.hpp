#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "airfilm/film_dynamics.hpp"
#include "airfilm/porous_flow.hpp"

// CSV emission. All numbers use the shortest round-trip decimal form with
// '.' as the separator, independent of locale, so identical inputs produce
// byte-identical files.
namespace airfilm::io {

std::string format_double(double value);

/// Header: t,body_id,x,y,theta,vx,vy,omega — one row per body per sample.
void write_trajectory_csv(std::ostream& os, const sim::Trajectory& traj);

/// Header: t,px,py,L,ke — totals per sample, L about the given origin.
void write_diagnostics_csv(std::ostream& os, const sim::Trajectory& traj,
                           Vec2 origin = {0.0, 0.0});

/// Header: x_m,v_ratio.
void write_flow_curve_csv(std::ostream& os, const std::vector<flow::FlowSample>& curve);

/// Header: x_m,y_m,v_ratio — row-major field samples.
void write_field_csv(std::ostream& os, const flow::SurfaceVelocityField& field);

}  // namespace airfilm::io
