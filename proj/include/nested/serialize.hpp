#pragma once

#include <ostream>

#include <json.hpp>

#include "geodesics.hpp"
#include "hamilton.hpp"
#include "lie.hpp"
#include "quat.hpp"

/*
 * JSON layouts
 *
 *   quaternion  [w, x, y, z]
 *   matrix      [a, b, c, d]           row-major, each a quaternion
 *   frame       [matrix x 10]          standard order, see standard_frame
 *   covector    {"side": "up"|"down", "base": [...], "frame-id": "...",
 *                "gauge": matrix, "components": [...]}
 *               base is a matrix upstairs and [b, d] (two quaternions) downstairs
 *
 * CSV traces
 *
 *   upstairs:   t, a_w..a_z, b_w..b_z, c_w..c_z, d_w..d_z, p1..p10, energy
 *   downstairs: t, b_w..b_z, d_w..d_z, pb_w..pb_z, pd_w..pd_z, energy
 */

namespace nested {

nlohmann::json to_json(const Quaterniond & q);
nlohmann::json to_json(const QuatMat2d & m);
nlohmann::json to_json(const GroupPointd & Q);
nlohmann::json to_json(const AlgebraVectord & u);
nlohmann::json to_json(const std::vector<AlgebraVectord> & vs);
nlohmann::json to_json(const FramedAlgebra<double> & frame);
nlohmann::json to_json(const SpherePoint7 & n);
nlohmann::json to_json(const Covector & c);

Quaterniond quaternion_from_json(const nlohmann::json & j);
QuatMat2d matrix_from_json(const nlohmann::json & j);
/// Throws std::invalid_argument when the matrix is not near Sp(2).
GroupPointd group_point_from_json(const nlohmann::json & j);
Covector covector_from_json(const nlohmann::json & j);

void write_csv(std::ostream & os, const UpTrace & trace);
void write_csv(std::ostream & os, const DownTrace & trace);

}  // namespace nested
