#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subrigid/error.hpp"
#include "subrigid/report.hpp"

namespace py = pybind11;

namespace {

subrigid::SpecFormat parse_format(const std::string& f) {
  if (f == "json") return subrigid::SpecFormat::Json;
  if (f == "toml") return subrigid::SpecFormat::Toml;
  throw subrigid::InvalidInput("unknown format '" + f + "'");
}

// Returns (report JSON text, summary text).
std::pair<std::string, std::string> run(const std::string& command, const std::string& spec_text,
                                        const std::string& format, const std::string& word, std::size_t max_m,
                                        std::size_t n, const std::string& delta, const std::string& eps,
                                        unsigned depth, bool use_float) {
  subrigid::RunOptions opts;
  opts.command = command;
  opts.word = word;
  opts.max_m = max_m;
  opts.n = n;
  opts.delta = delta;
  opts.eps = eps;
  opts.depth = depth;
  if (use_float) opts.mode = subrigid::Mode::Float;
  std::optional<subrigid::SubstitutionSpec> spec;
  if (!spec_text.empty()) spec = subrigid::parse_spec(spec_text, parse_format(format));
  std::ostringstream summary;
  nlohmann::json report;
  {
    py::gil_scoped_release release;
    report = subrigid::run_command(spec ? &*spec : nullptr, opts, summary);
  }
  return {report.dump(), summary.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact cylinder measures and partial rigidity rates of substitution subshifts";

  static py::exception<subrigid::Error> error(m, "Error");
  static py::exception<subrigid::InvalidInput> invalid(m, "InvalidInput", error.ptr());
  static py::exception<subrigid::RejectedInput> rejected(m, "RejectedInput", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const subrigid::RejectedInput& e) {
      py::set_error(rejected, e.what());
    } catch (const subrigid::InvalidInput& e) {
      py::set_error(invalid, e.what());
    } catch (const subrigid::Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("run", &run, py::arg("command"), py::arg("spec_text") = "", py::arg("format") = "json",
        py::arg("word") = "", py::arg("max_m") = 0, py::arg("n") = 20, py::arg("delta") = "",
        py::arg("eps") = "", py::arg("depth") = 0, py::arg("use_float") = false);

  m.def("normalize_spec", [](const std::string& text, const std::string& format) {
    return subrigid::serialize_spec(subrigid::parse_spec(text, parse_format(format)));
  }, py::arg("text"), py::arg("format") = "json");

  m.def("product_rate", [](const std::vector<std::string>& rates) {
    std::vector<subrigid::Scalar> xs;
    for (const auto& r : rates) xs.push_back(subrigid::Scalar::parse_exact(r));
    return subrigid::product_rate(xs).str();
  }, py::arg("rates"));
}
