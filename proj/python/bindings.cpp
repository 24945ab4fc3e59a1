#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lerch/congruences.hpp"
#include "lerch/search.hpp"

namespace py = pybind11;
using namespace lerch;

namespace {

py::object to_py(const BigInt& x) { return py::module_::import("builtins").attr("int")(x.get_str()); }

py::object to_py(const BigRational& x) {
    return py::module_::import("fractions").attr("Fraction")(to_py(x.get_num()), to_py(x.get_den()));
}

py::object evidence_to_py(const Evidence& e) {
    if (std::holds_alternative<std::monostate>(e)) return py::none();
    if (const auto* r = std::get_if<Residue>(&e)) return to_py(r->value());
    if (const auto* q = std::get_if<BigRational>(&e)) return to_py(*q);
    return py::str(evidence_to_string(e));
}

py::dict result_to_py(const CongruenceResult& r) {
    py::dict d;
    d["id"] = std::string(info(r.id).name);
    d["p"] = r.p;
    d["m"] = r.m ? py::object(py::int_(*r.m)) : py::none();
    d["applicable"] = r.applicable;
    d["holds"] = r.holds ? py::object(py::bool_(*r.holds)) : py::none();
    d["lhs"] = evidence_to_py(r.lhs);
    d["rhs"] = evidence_to_py(r.rhs);
    d["modulus_exponent"] = r.modulus_exponent;
    d["method"] = std::string(method_name(r.method_used));
    d["derived_from_same_data"] = r.derived_from_same_data;
    d["error"] = r.error ? py::object(py::str(std::string(errc_name(*r.error)))) : py::none();
    return d;
}

template <class T>
py::object optional_to_py(const std::optional<T>& v) {
    return v ? py::cast(*v) : py::none();
}

py::dict record_to_py(const SearchRecord& r) {
    py::dict d;
    d["p"] = r.p;
    d["lerch_residue"] = optional_to_py(r.lerch_residue);
    d["is_lerch"] = optional_to_py(r.is_lerch);
    d["wilson_residue"] = r.wilson_residue;
    d["is_wilson"] = r.is_wilson;
    d["c20"] = optional_to_py(r.c20);
    d["method"] = r.method;
    return d;
}

Method method_arg(const std::string& name) {
    const auto m = parse_method(name);
    if (!m) throw py::value_error("unknown method: " + name);
    return *m;
}

CongruenceId id_arg(const std::string& name) {
    const auto id = parse_congruence_id(name);
    if (!id) throw py::value_error("unknown congruence: " + name);
    return *id;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fermat, Wilson and Lerch quotients, Bernoulli numbers, congruence checks and prime search";

    py::register_exception<Error>(m, "LerchError", PyExc_ValueError);

    m.def("fermat_quotient", [](std::uint64_t a, std::uint64_t p, int k) { return to_py(fermat_quotient(a, p, k).value()); },
          py::arg("a"), py::arg("p"), py::arg("k") = 1);
    m.def("fermat_quotient_sum", [](std::uint64_t p, int k) { return to_py(fermat_quotient_sum(p, k).value()); },
          py::arg("p"), py::arg("k") = 1);
    m.def("wilson_quotient", [](std::uint64_t p, int k) { return to_py(wilson_quotient(p, k).value()); }, py::arg("p"),
          py::arg("k") = 1);
    m.def("lerch_residue", [](std::uint64_t p) { return to_py(lerch_residue(p).value()); }, py::arg("p"));
    m.def("fermat_quotient_sum_exact", [](std::uint64_t p) { return to_py(fermat_quotient_sum_exact(p)); }, py::arg("p"));
    m.def("wilson_quotient_exact", [](std::uint64_t p) { return to_py(wilson_quotient_exact(p)); }, py::arg("p"));

    m.def("bernoulli", [](long n) { return to_py(BernoulliTable(std::max(n, 1L))[n]); }, py::arg("n"));
    m.def("bernoulli_numbers", [](long n) {
        const BernoulliTable t(std::max(n, 1L));
        py::list out;
        for (long i = 0; i <= n; ++i) out.append(to_py(t[i]));
        return out;
    }, py::arg("n"));

    m.def("sieve", &sieve, py::arg("lo"), py::arg("hi"));
    m.def("registry", [] {
        py::list out;
        for (const auto& e : registry()) {
            py::dict d;
            d["id"] = std::string(e.name);
            d["statement"] = std::string(e.statement);
            d["modulus_exponent"] = e.modulus_exponent;
            d["min_p"] = e.min_p;
            d["unconditional"] = is_unconditional(e.id);
            out.append(d);
        }
        return out;
    });

    py::class_<CongruenceEngine>(m, "Engine")
        .def(py::init<std::uint64_t>(), py::arg("p_exact") = CongruenceEngine::kDefaultPExact)
        .def_property_readonly("p_exact", &CongruenceEngine::p_exact)
        .def("check",
             [](const CongruenceEngine& e, const std::string& id, std::uint64_t p, const std::string& method,
                std::optional<long> mult) { return result_to_py(e.check({id_arg(id), p, mult, method_arg(method)})); },
             py::arg("id"), py::arg("p"), py::arg("method") = "auto", py::arg("m") = py::none())
        .def("check_all",
             [](const CongruenceEngine& e, std::uint64_t p) {
                 py::list out;
                 for (const auto& r : e.check_all(p)) out.append(result_to_py(r));
                 return out;
             },
             py::arg("p"))
        .def("lerch_criteria",
             [](const CongruenceEngine& e, std::uint64_t p, const std::string& method) {
                 const auto c = e.lerch_criteria_agree(p, method_arg(method));
                 py::dict d;
                 d["p"] = c.p;
                 d["C07"] = optional_to_py(c.c07);
                 d["C09"] = optional_to_py(c.c09);
                 d["C18"] = optional_to_py(c.c18);
                 d["C19"] = optional_to_py(c.c19);
                 d["agree"] = c.agree;
                 return d;
             },
             py::arg("p"), py::arg("method") = "auto")
        .def("classify", [](const CongruenceEngine& e, std::uint64_t p) { return record_to_py(classify(p, e)); }, py::arg("p"))
        .def("search",
             [](const CongruenceEngine& e, std::uint64_t lo, std::uint64_t hi, unsigned threads,
                std::optional<std::filesystem::path> out_path, std::optional<std::filesystem::path> checkpoint_path,
                const std::string& format, bool force) {
                 SearchOptions opt;
                 opt.threads = threads;
                 opt.out_path = std::move(out_path);
                 opt.checkpoint_path = std::move(checkpoint_path);
                 if (format != "jsonl" && format != "csv") throw py::value_error("format must be jsonl or csv");
                 opt.format = format == "csv" ? RecordFormat::Csv : RecordFormat::Jsonl;
                 opt.force = force;
                 SearchSummary s;
                 {
                     py::gil_scoped_release release;
                     s = search_range(lo, hi, opt, e);
                 }
                 py::dict d;
                 d["range"] = py::make_tuple(s.range_lo, s.range_hi);
                 d["found_lerch"] = s.found_lerch;
                 d["found_wilson"] = s.found_wilson;
                 d["found_c20"] = s.found_c20;
                 d["records_emitted"] = s.records_emitted;
                 d["completed"] = s.completed;
                 d["histogram_zeros"] = s.histogram.zeros;
                 d["histogram_deciles"] = s.histogram.deciles;
                 return d;
             },
             py::arg("lo"), py::arg("hi"), py::arg("threads") = 1, py::arg("out_path") = py::none(),
             py::arg("checkpoint_path") = py::none(), py::arg("format") = "jsonl", py::arg("force") = false);
}
