#include "rootsheaf/commands.hpp"
#include "rootsheaf/errors.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rootsheaf;

namespace {

py::dict stack_dict(const StackClass& c) {
  py::dict d;
  d["finite"] = c.finite;
  d["tame"] = c.tame;
  d["deligne_mumford"] = c.deligne_mumford;
  d["index"] = py::int_(py::str(c.index.str()));
  d["characteristic"] = c.characteristic;
  return d;
}

std::vector<Relation> relations_from(const std::vector<std::pair<Word, Word>>& rels) {
  std::vector<Relation> out;
  for (const auto& [l, r] : rels) out.push_back({l, r});
  return out;
}

std::vector<std::size_t> slot_dimensions(const ParabolicSheaf& e) {
  const FreeForm f = free_form(e);
  std::vector<std::size_t> out;
  for (const auto& p : f.sheaf.slots()) out.push_back(p.gens);
  return out;
}

struct PyDocument {
  Document doc;

  std::string algebra_name(const std::string& name) const { return doc.algebra_of(name); }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Root stacks, parabolic sheaves and finitely presented commutative monoids";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<UnsupportedError> unsupported_error(m, "UnsupportedError", PyExc_NotImplementedError);
  static py::exception<ResourceError> resource_error(m, "ResourceError", PyExc_RuntimeError);
  static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::object exc = py::reinterpret_borrow<py::object>(validation_error)(py::str(e.what()));
      exc.attr("locus") = e.locus();
      PyErr_SetObject(validation_error.ptr(), exc.ptr());
    } catch (const InputError& e) {
      PyErr_SetString(input_error.ptr(), e.what());
    } catch (const UnsupportedError& e) {
      PyErr_SetString(unsupported_error.ptr(), e.what());
    } catch (const ResourceError& e) {
      PyErr_SetString(resource_error.ptr(), e.what());
    }
  });

  m.def("command_names", &command_names);
  m.def(
      "run_command",
      [](const std::string& command, const std::string& text, const std::vector<std::string>& args,
         std::size_t rule_budget, std::int64_t search_bound, std::int64_t piece_height) {
        DocumentOptions o;
        o.limits.rule_budget = rule_budget;
        o.search_bound = search_bound;
        o.piece_height = piece_height;
        const CommandResult r = run_command(command, text, args, o);
        return py::make_tuple(r.exit_code, r.report);
      },
      py::arg("command"), py::arg("text"), py::arg("args") = std::vector<std::string>{},
      py::arg("rule_budget") = CompletionLimits{}.rule_budget, py::arg("search_bound") = 8,
      py::arg("piece_height") = 4, "Run a CLI command on document text; returns (exit_code, report).");

  py::class_<FpMonoid>(m, "Monoid")
      .def(py::init([](std::vector<std::string> gens, const std::vector<std::pair<Word, Word>>& rels) {
             return FpMonoid(std::move(gens), relations_from(rels));
           }),
           py::arg("generators"), py::arg("relations") = std::vector<std::pair<Word, Word>>{})
      .def_property_readonly("generators", &FpMonoid::generator_names)
      .def("normal_form", &FpMonoid::normal_form)
      .def("congruent", &FpMonoid::congruent)
      .def("format", &FpMonoid::format)
      .def("is_integral", [](const FpMonoid& x) { return x.is_integral(); })
      .def("unit_generators", &FpMonoid::unit_generators)
      .def("classify", [](const FpMonoid& x) {
        const Classification c = classify(x);
        py::dict d;
        d["integral"] = c.integral;
        d["sharp"] = c.sharp;
        d["torsion_free"] = c.torsion_free;
        d["group"] = c.group.to_string();
        d["units"] = c.units;
        return d;
      });

  py::class_<MonoidHom>(m, "MonoidHom")
      .def(py::init<FpMonoid, FpMonoid, std::vector<Word>>(), py::arg("source"), py::arg("target"), py::arg("images"))
      .def("apply", &MonoidHom::apply)
      .def("kernel", [](const MonoidHom& f) { return kernel(f).generators(); })
      .def(
          "is_kummer",
          [](const MonoidHom& f, std::int64_t search_bound) {
            const KummerCertificate c = is_kummer(f, search_bound);
            py::dict d;
            d["is_kummer"] = to_string(c.is_kummer);
            d["injective"] = to_string(c.injective);
            d["multipliers"] = c.multipliers;
            d["reason"] = c.reason;
            return d;
          },
          py::arg("search_bound") = 8)
      .def("is_cokernel", [](const MonoidHom& f) { return to_string(cokernel_analyze(f).is_cokernel); });

  m.def(
      "kernel_closure",
      [](const FpMonoid& monoid, const std::vector<Word>& gens) {
        return kernel_closure(monoid, SubmonoidGens(monoid, gens)).generators();
      },
      py::arg("monoid"), py::arg("generators"));
  m.def(
      "classify_stack",
      [](std::int64_t index, std::int64_t characteristic) { return stack_dict(classify_stack(index, characteristic)); },
      py::arg("index"), py::arg("characteristic"));

  py::class_<PyDocument>(m, "Document")
      .def(py::init([](const std::string& text, std::int64_t search_bound, std::int64_t piece_height) {
             DocumentOptions o;
             o.search_bound = search_bound;
             o.piece_height = piece_height;
             return PyDocument{Document::parse(text, o)};
           }),
           py::arg("text"), py::arg("search_bound") = 8, py::arg("piece_height") = 4)
      .def("names", [](const PyDocument& d) { return d.doc.names(); })
      .def("kind",
           [](const PyDocument& d, const std::string& name) -> std::optional<std::string> {
             const auto k = d.doc.kind_of(name);
             if (!k) return std::nullopt;
             return to_string(*k);
           })
      .def("monoid", [](const PyDocument& d, const std::string& name) { return d.doc.monoid(name); })
      .def("hom", [](const PyDocument& d, const std::string& name) { return d.doc.hom(name); })
      .def("algebra_dump", [](const PyDocument& d, const std::string& name) { return d.doc.algebra(name)->dump(); })
      .def("classify_stack",
           [](const PyDocument& d, const std::string& name) { return stack_dict(classify_stack(*d.doc.algebra(name))); })
      .def("check_parabolic", [](const PyDocument& d, const std::string& name) { validate(d.doc.parabolic_unchecked(name)); })
      .def("slot_dimensions",
           [](const PyDocument& d, const std::string& name) { return slot_dimensions(d.doc.parabolic(name)); })
      .def("phi",
           [](const PyDocument& d, const std::string& name) {
             return format_parabolic(phi(d.doc.graded(name)), "phi_" + name, d.algebra_name(name));
           })
      .def("psi",
           [](const PyDocument& d, const std::string& name) {
             return format_graded(psi(d.doc.parabolic(name)), "psi_" + name, d.algebra_name(name));
           })
      .def("roundtrip",
           [](const PyDocument& d, const std::string& name) {
             if (d.doc.kind_of(name) == DeclKind::graded) return roundtrip_presentation(d.doc.graded(name)).iso;
             return roundtrip_sheaf(d.doc.parabolic(name)).iso;
           })
      .def("hom_dimensions",
           [](const PyDocument& d, const std::string& a, const std::string& b) {
             return slot_dimensions(parabolic_hom(d.doc.parabolic(a), d.doc.parabolic(b)));
           })
      .def("tensor", [](const PyDocument& d, const std::string& a, const std::string& b) {
        return format_parabolic(parabolic_tensor(d.doc.parabolic(a), d.doc.parabolic(b)), "tensor_" + a + "_" + b,
                                d.algebra_name(a));
      });
}
