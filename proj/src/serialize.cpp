#include "nested/serialize.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace nested {

nlohmann::json to_json(const Quaterniond & q) { return {q.w, q.x, q.y, q.z}; }

nlohmann::json to_json(const QuatMat2d & m) { return {to_json(m.a), to_json(m.b), to_json(m.c), to_json(m.d)}; }

nlohmann::json to_json(const GroupPointd & Q) { return to_json(Q.matrix()); }

nlohmann::json to_json(const AlgebraVectord & u) { return to_json(u.matrix()); }

nlohmann::json to_json(const std::vector<AlgebraVectord> & vs)
{
  nlohmann::json j = nlohmann::json::array();
  for (const auto & v : vs) { j.push_back(to_json(v)); }
  return j;
}

nlohmann::json to_json(const FramedAlgebra<double> & frame)
{
  return to_json(std::vector<AlgebraVectord>(frame.basis.begin(), frame.basis.end()));
}

nlohmann::json to_json(const SpherePoint7 & n) { return {to_json(n.b), to_json(n.d)}; }

nlohmann::json to_json(const Covector & c)
{
  nlohmann::json j;
  j["side"]       = c.side == Side::Up ? "up" : "down";
  j["base"]       = c.side == Side::Up ? to_json(c.gauge) : to_json(c.base_down());
  j["frame-id"]   = c.frame_id();
  j["gauge"]      = to_json(c.gauge);
  j["components"] = std::vector<double>(c.components.data(), c.components.data() + c.components.size());
  return j;
}

Quaterniond quaternion_from_json(const nlohmann::json & j)
{
  if (!j.is_array() || j.size() != 4) { throw std::invalid_argument("quaternion must be an array of 4 reals"); }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

QuatMat2d matrix_from_json(const nlohmann::json & j)
{
  if (!j.is_array() || j.size() != 4) { throw std::invalid_argument("matrix must be an array of 4 quaternions"); }
  return {quaternion_from_json(j[0]), quaternion_from_json(j[1]), quaternion_from_json(j[2]), quaternion_from_json(j[3])};
}

GroupPointd group_point_from_json(const nlohmann::json & j) { return GroupPointd(matrix_from_json(j)); }

Covector covector_from_json(const nlohmann::json & j)
{
  const std::string side = j.at("side").get<std::string>();
  const GroupPointd gauge = group_point_from_json(j.at("gauge"));
  const auto comps        = j.at("components").get<std::vector<double>>();
  const Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(comps.data(), static_cast<Eigen::Index>(comps.size()));
  if (side == "up" && c.size() == 10) { return Covector::up(gauge, c); }
  if (side == "down" && c.size() == 7) { return Covector::down(gauge, c); }
  throw std::invalid_argument("covector: side must be up (10 components) or down (7 components)");
}

namespace {

void put(std::ostream & os, double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << ',' << buf;
}

template<typename Trace, typename PointVec>
void write_rows(std::ostream & os, const Trace & trace, PointVec point_vector)
{
  for (std::size_t i = 0; i < trace.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", trace.times[i]);
    os << buf;
    const auto x = point_vector(trace.points[i]);
    for (Eigen::Index k = 0; k < x.size(); ++k) { put(os, x(k)); }
    for (Eigen::Index k = 0; k < trace.momenta[i].size(); ++k) { put(os, trace.momenta[i](k)); }
    put(os, trace.energy[i]);
    os << '\n';
  }
}

}  // namespace

void write_csv(std::ostream & os, const UpTrace & trace)
{
  os << "t";
  for (const char * q : {"a", "b", "c", "d"}) {
    for (const char * c : {"w", "x", "y", "z"}) { os << ',' << q << '_' << c; }
  }
  for (int i = 1; i <= 10; ++i) { os << ",p" << i; }
  os << ",energy\n";
  write_rows(os, trace, [](const GroupPointd & Q) { return Q.matrix().realVector(); });
}

void write_csv(std::ostream & os, const DownTrace & trace)
{
  os << "t";
  for (const char * q : {"b", "d"}) {
    for (const char * c : {"w", "x", "y", "z"}) { os << ',' << q << '_' << c; }
  }
  for (const char * q : {"pb", "pd"}) {
    for (const char * c : {"w", "x", "y", "z"}) { os << ',' << q << '_' << c; }
  }
  os << ",energy\n";
  write_rows(os, trace, [](const SpherePoint7 & n) { return n.vector(); });
}

}  // namespace nested
