#include "plait/plait.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "plait/error.hpp"
#include "plait/figures.hpp"
#include "plait/io.hpp"
#include "plait/verify.hpp"

struct plait_system {
  plait::SubstitutionSystem sys;
};

namespace {

thread_local std::string g_last_error;

plait_status fail(plait_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
plait_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return PLAIT_OK;
  } catch (const plait::Error& e) {
    return fail(static_cast<plait_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::exception& e) {
    return fail(PLAIT_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(PLAIT_INTERNAL_ERROR, "unknown failure");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw plait::Error(plait::ErrorCode::InvalidArgument, what);
}

}  // namespace

extern "C" {

const char* plait_version(void) { return "1.0.0"; }

const char* plait_status_name(plait_status status) {
  if (status == PLAIT_OK) return "Ok";
  if (status == PLAIT_INTERNAL_ERROR) return "InternalError";
  if (status >= PLAIT_INVALID_ARGUMENT && status <= PLAIT_IO_ERROR) {
    return plait::error_code_name(static_cast<plait::ErrorCode>(status));
  }
  return "Unknown";
}

const char* plait_last_error(void) { return g_last_error.c_str(); }

void plait_string_free(char* s) { std::free(s); }

plait_status plait_threshold(int n_arcs, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = plait::plaiting_threshold(n_arcs);
  });
}

plait_status plait_classify(int n_arcs, double amplitude, double x_min, double x_max, const char* method,
                            double step, double tol, char** json_out) {
  return guarded([&] {
    require(json_out != nullptr && method != nullptr, "null argument");
    const plait::SineFamilyParams p{n_arcs, amplitude, {x_min, x_max}};
    const double s = step > 0 ? step : plait::kDefaultClassifyStep;
    const double t = tol > 0 ? tol : plait::kIntersectTol;
    *json_out = dup_string(plait::classify_json(p, plait::parse_method(method), s, t).dump());
  });
}

plait_status plait_system_builtin(const char* name, plait_system** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = new plait_system{plait::SubstitutionSystem::builtin(name)};
  });
}

plait_status plait_system_load(const char* path, plait_system** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new plait_system{plait::load_system_file(path)};
  });
}

plait_status plait_system_from_json(const char* text, plait_system** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new plait_system{plait::system_from_text(text)};
  });
}

void plait_system_free(plait_system* sys) { delete sys; }

plait_status plait_system_json(const plait_system* sys, char** json_out) {
  return guarded([&] {
    require(sys != nullptr && json_out != nullptr, "null argument");
    *json_out = dup_string(plait::system_to_json(sys->sys).dump());
  });
}

plait_status plait_stage_json(const plait_system* sys, int n, char** json_out) {
  return guarded([&] {
    require(sys != nullptr && json_out != nullptr, "null argument");
    *json_out = dup_string(plait::stage_json(sys->sys, plait::stage(sys->sys, n)).dump());
  });
}

plait_status plait_stage_svg(const plait_system* sys, int n, char** svg_out) {
  return guarded([&] {
    require(sys != nullptr && svg_out != nullptr, "null argument");
    *svg_out = dup_string(plait::render_svg(plait::stage_scene(sys->sys, plait::stage(sys->sys, n))));
  });
}

int plait_figure_count(void) { return static_cast<int>(plait::figure_names().size()); }

const char* plait_figure_name(int index) {
  const auto& names = plait::figure_names();
  if (index < 0 || static_cast<std::size_t>(index) >= names.size()) return nullptr;
  return names[static_cast<std::size_t>(index)].c_str();
}

plait_status plait_figure_svg(const char* name, char** svg_out) {
  return guarded([&] {
    require(name != nullptr && svg_out != nullptr, "null argument");
    *svg_out = dup_string(plait::render_svg(plait::figure_scene(name)));
  });
}

plait_status plait_verify(const char* suite, uint64_t seed, int* passed, char** json_out) {
  return guarded([&] {
    require(suite != nullptr && passed != nullptr && json_out != nullptr, "null argument");
    plait::VerifyOptions opts;
    opts.seed = seed;
    const auto r = plait::run_verify(suite, opts);
    *passed = r.failures() == 0 ? 1 : 0;
    *json_out = dup_string(plait::verify_json(r).dump());
  });
}

}  // extern "C"
