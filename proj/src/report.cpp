#include "efv/report.hpp"

namespace efv {

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["identity"] = report.identity;
  j["curve"] = {{"p", report.p}, {"r", report.r}, {"a", report.a}, {"q", report.q},
                {"class", report.curve_class}};
  nlohmann::json alpha = nlohmann::json::array();
  for (const auto& b : report.alpha)
    alpha.push_back({b.amplitude, b.center, b.half_width});
  j["alpha"] = alpha;
  j["epsilon"] = report.epsilon;
  nlohmann::json routes = nlohmann::json::array();
  for (const auto& rv : report.routes) {
    routes.push_back({{"route", rv.name},
                      {"re", rv.side.value.real()},
                      {"im", rv.side.value.imag()},
                      {"trunc_err", rv.side.truncation_error},
                      {"quad_err", rv.side.quadrature_error}});
  }
  j["routes"] = routes;
  nlohmann::json residuals = nlohmann::json::array();
  for (const auto& rc : report.residuals) {
    residuals.push_back({{"routes", {rc.route_a, rc.route_b}},
                         {"residual", rc.residual},
                         {"budget", rc.budget},
                         {"pass", rc.pass}});
  }
  j["residuals"] = residuals;
  j["pass"] = report.pass;
  return j;
}

}  // namespace efv
