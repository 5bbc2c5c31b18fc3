// Command-line surface over the generalized-inverse library. The only
// module that touches files or streams; every subcommand delegates to one
// library operation and prints the identities it verified.
//
// Exit codes: 0 success, 2 inverse does not exist, 3 parse/usage error,
// 4 numerical failure (ambiguous rank decision or contour too close to an
// eigenvalue).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ginv/io.hpp"
#include "ginv/spectral.hpp"

namespace {

using namespace ginv;

template <class T>
Matrix<T> convert(const io::RawMatrix& raw);

template <>
Matrix<Rational> convert<Rational>(const io::RawMatrix& raw) { return io::to_exact(raw); }

template <>
Matrix<Complex> convert<Complex>(const io::RawMatrix& raw) { return io::to_float(raw); }

template <class T>
void print_verified(std::ostream& out, const Certificate<T>& cert) {
    for (const auto& [name, residual] : cert.identities)
        out << "verified " << name << ": " << format_double(residual) << "\n";
    for (const auto& [name, ok] : cert.subspace_checks)
        out << "verified " << name << ": " << (ok ? "true" : "false") << "\n";
}

template <class T>
void print_certificate(std::ostream& out, const Certificate<T>& cert, bool as_json) {
    if (as_json) {
        out << io::certificate_to_json(cert).dump(2) << "\n";
        return;
    }
    out << "kind: " << kind_name(cert.kind) << "\n";
    print_verified(out, cert);
    out << "tolerance: " << format_double(cert.tolerance) << "\n";
    out << "verdict: " << (cert.pass ? "PASS" : "FAIL") << "\n";
}

struct Request {
    std::string backend = "float";
    double tol = 1e-10;
    bool json = false;
    std::size_t quad_points = 64;

    std::string sub;
    std::vector<std::string> files;     // positional matrix files, subcommand order
    std::string range_file, nullsp_file, along_file, p_file, q_file, eigs_file;
    std::string kind_name;
    std::vector<double> disk;           // cx cy r
    std::string route = "both";
    long long plant_n = 0, plant_r = 0;
    unsigned long long plant_seed = 0;
    int negative_mode = -1;
    std::string prefix = "planted";

    TolerancePolicy policy() const {
        TolerancePolicy pol;
        pol.rank_tol = tol;
        pol.ambiguity_factor = 10.0;
        pol.validate();
        return pol;
    }
};

bool wants_exact(const Request& req, const std::vector<io::RawMatrix>& raws) {
    bool exact = req.backend == "exact";
    for (const auto& raw : raws) exact = exact || raw.json_rational;
    if (exact)
        for (const auto& raw : raws)
            if (raw.complex_entries) throw ParseError("exact backend supports real matrices only");
    return exact;
}

template <class T>
int emit_inverse(std::ostream& out, const Matrix<T>& a, const InverseResult<T>& res,
                 InverseKind kind, const CertifyContext<T>& ctx, const TolerancePolicy& pol) {
    if (!res.exists()) {
        std::cerr << describe(res.reason) << "\n";
        return 2;
    }
    out << io::format_matrix_inline(res.matrix()) << "\n";
    print_verified(out, certify(a, res.matrix(), kind, ctx, pol));
    return 0;
}

template <class T>
int run_backend(const Request& req, const std::vector<io::RawMatrix>& raws) {
    const TolerancePolicy pol = req.policy();
    std::ostream& out = std::cout;
    std::vector<Matrix<T>> ms;
    ms.reserve(raws.size());
    for (const auto& raw : raws) ms.push_back(convert<T>(raw));

    if (req.sub == "mp") {
        const Matrix<T> b = moore_penrose(ms[0], pol);
        out << io::format_matrix_inline(b) << "\n";
        print_verified(out, certify(ms[0], b, InverseKind::MOORE_PENROSE, {}, pol));
        return 0;
    }
    if (req.sub == "group")
        return emit_inverse(out, ms[0], group_inverse(ms[0], pol), InverseKind::GROUP, {}, pol);
    if (req.sub == "drazin") {
        const auto dz = drazin_inverse(ms[0], pol);
        out << io::format_matrix_inline(dz.b) << "\n";
        out << "index: " << dz.index << "\n";
        print_verified(out, certify(ms[0], dz.b, InverseKind::DRAZIN, {}, pol));
        return 0;
    }
    if (req.sub == "mary") {
        CertifyContext<T> ctx;
        ctx.along = ms[1];
        return emit_inverse(out, ms[0], inverse_along(ms[0], ms[1], pol), InverseKind::MARY, ctx,
                            pol);
    }
    if (req.sub == "outer") {
        const auto range = Subspace<T>::from_spanning(convert<T>(io::read_matrix_file(req.range_file)), pol);
        const auto nullsp =
            Subspace<T>::from_spanning(convert<T>(io::read_matrix_file(req.nullsp_file)), pol);
        CertifyContext<T> ctx;
        ctx.range = range;
        ctx.nullsp = nullsp;
        return emit_inverse(out, ms[0], outer_prescribed(ms[0], range, nullsp, pol),
                            InverseKind::OUTER, ctx, pol);
    }
    if (req.sub == "pq") {
        CertifyContext<T> ctx;
        ctx.p = ms[1];
        ctx.q = ms[2];
        return emit_inverse(out, ms[0], pq_inverse(ms[0], ms[1], ms[2], pol), InverseKind::PQ, ctx,
                            pol);
    }
    if (req.sub == "diagnose") {
        const auto diag = diagnose_along(ms[0], ms[1], pol);
        out << "rn_closed_complemented: " << (diag.rn_closed_complemented ? "true" : "false")
            << "\n";
        out << "direct_sum_holds: " << (diag.direct_sum_holds ? "true" : "false") << "\n";
        out << "reduction_invertible: " << (diag.reduction_invertible ? "true" : "false") << "\n";
        out << "exists: " << (diag.exists ? "true" : "false") << "\n";
        return 0;
    }
    if (req.sub == "certify") {
        const auto kind = parse_kind(req.kind_name);
        if (!kind) throw ParseError("unknown certification kind '" + req.kind_name + "'");
        CertifyContext<T> ctx;
        if (!req.along_file.empty()) ctx.along = convert<T>(io::read_matrix_file(req.along_file));
        if (!req.p_file.empty()) ctx.p = convert<T>(io::read_matrix_file(req.p_file));
        if (!req.q_file.empty()) ctx.q = convert<T>(io::read_matrix_file(req.q_file));
        if (!req.range_file.empty())
            ctx.range =
                Subspace<T>::from_spanning(convert<T>(io::read_matrix_file(req.range_file)), pol);
        if (!req.nullsp_file.empty())
            ctx.nullsp =
                Subspace<T>::from_spanning(convert<T>(io::read_matrix_file(req.nullsp_file)), pol);
        print_certificate(out, certify(ms[0], ms[1], *kind, ctx, pol), req.json);
        return 0;
    }
    throw ParseError("subcommand '" + req.sub + "' does not support this backend");
}

int run_specproj(const Request& req) {
    const TolerancePolicy pol = req.policy();
    const Matrix<Complex> a = io::to_float(io::read_matrix_file(req.files[0]));
    std::ostream& out = std::cout;

    std::optional<SpectralSet> set;
    if (!req.disk.empty())
        set = select_disk(a, Complex(req.disk[0], req.disk[1]), req.disk[2]);
    else if (!req.eigs_file.empty()) {
        const Matrix<Complex> chosen_m = io::to_float(io::read_matrix_file(req.eigs_file));
        std::vector<Complex> chosen;
        for (std::size_t i = 0; i < chosen_m.rows(); ++i)
            for (std::size_t j = 0; j < chosen_m.cols(); ++j) chosen.push_back(chosen_m(i, j));
        set = select_members(a, chosen);
    } else
        throw ParseError("specproj needs --disk or --eigs");

    const bool want_schur = req.route == "both" || req.route == "schur";
    const bool want_contour = req.route == "both" || req.route == "contour";
    if (want_contour && req.disk.empty())
        throw ParseError("the contour route needs --disk");

    std::optional<Projector<Complex>> schur, contour;
    if (want_schur) schur = spectral_projection_schur(a, *set, pol);
    if (want_contour)
        contour = spectral_projection_contour(
            a, Contour{Complex(req.disk[0], req.disk[1]), req.disk[2], req.quad_points}, pol);

    const Matrix<Complex>& p = want_schur ? schur->p : contour->p;
    out << io::format_matrix_inline(p) << "\n";
    out << "verified P^2=P: " << format_double(rel_residual(p * p, p)) << "\n";
    out << "verified AP=PA: " << format_double(rel_residual(a * p, p * a)) << "\n";
    if (schur && contour)
        out << "verified routes agree: " << format_double(max_abs_diff(schur->p, contour->p))
            << "\n";
    return 0;
}

int run_kd(const Request& req) {
    const TolerancePolicy pol = req.policy();
    const Matrix<Complex> a = io::to_float(io::read_matrix_file(req.files[0]));
    std::ostream& out = std::cout;
    const Matrix<Complex> b = koliha_drazin(a, pol);
    out << io::format_matrix_inline(b) << "\n";
    out << "verified BAB=B: " << format_double(rel_residual(b * a * b, b)) << "\n";
    out << "verified AB=BA: " << format_double(rel_residual(a * b, b * a)) << "\n";
    // Scale-free nilpotency probe of A(I-AB): normalize, then take the n-th power.
    Matrix<Complex> nil = a * (Matrix<Complex>::identity(a.rows()) - a * b);
    bool nilpotent = true;
    const double scale = nil.frobenius_norm();
    if (scale > 0.0) {
        nil = nil * Complex(1.0 / scale, 0.0);
        nilpotent = matrix_power(nil, static_cast<unsigned>(a.rows())).frobenius_norm() <= 1e-8;
    }
    out << "verified A(I-AB) nilpotent: " << (nilpotent ? "true" : "false") << "\n";
    return 0;
}

int run_plant(const Request& req) {
    if (req.plant_n < 1 || req.plant_r < 1 || req.plant_r > req.plant_n)
        throw ParseError("plant needs 1 <= r <= n");
    const auto n = static_cast<std::size_t>(req.plant_n);
    const auto r = static_cast<std::size_t>(req.plant_r);
    const bool exact = req.backend == "exact";
    std::string a_path, d_path;
    if (exact) {
        const auto pair = req.negative_mode < 0
                              ? plant_along_pair<Rational>(n, r, req.plant_seed)
                              : plant_along_negative<Rational>(n, r, req.plant_seed,
                                                              req.negative_mode);
        a_path = req.prefix + "_A.json";
        d_path = req.prefix + "_D.json";
        io::write_json_rational(pair.a, a_path);
        io::write_json_rational(pair.d, d_path);
    } else {
        const auto pair = req.negative_mode < 0
                              ? plant_along_pair<Complex>(n, r, req.plant_seed)
                              : plant_along_negative<Complex>(n, r, req.plant_seed,
                                                             req.negative_mode);
        a_path = req.prefix + "_A.mtx";
        d_path = req.prefix + "_D.mtx";
        io::write_matrix_market(pair.a, a_path);
        io::write_matrix_market(pair.d, d_path);
    }
    std::cout << a_path << "\n" << d_path << "\n";
    return 0;
}

int dispatch(const Request& req) {
    if (req.sub == "plant") return run_plant(req);

    std::vector<io::RawMatrix> raws;
    raws.reserve(req.files.size());
    for (const auto& path : req.files) raws.push_back(io::read_matrix_file(path));

    if (req.sub == "specproj" || req.sub == "kd") {
        if (wants_exact(req, raws)) throw ParseError("spectral operations run on the float backend");
        return req.sub == "specproj" ? run_specproj(req) : run_kd(req);
    }
    return wants_exact(req, raws) ? run_backend<Rational>(req, raws)
                                  : run_backend<Complex>(req, raws);
}

} // namespace

int main(int argc, char** argv) {
    Request req;
    CLI::App app{"dense generalized-inverse toolkit"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--backend", req.backend, "scalar backend")
        ->check(CLI::IsMember({"exact", "float"}));
    auto* tol_opt = app.add_option("--tol", req.tol, "relative rank threshold");
    app.add_flag("--json", req.json, "certificate output as JSON");
    app.add_option("--quad-points", req.quad_points, "contour quadrature points");

    const auto add_files = [&](CLI::App* sub, std::initializer_list<const char*> names) {
        for (const char* name : names)
            sub->add_option(name, [&req](const std::vector<std::string>& vals) {
                   req.files.push_back(vals.front());
                   return true;
               },
               "matrix file")
                ->required()
                ->type_name("FILE");
    };

    add_files(app.add_subcommand("mp", "Moore-Penrose inverse"), {"A"});
    add_files(app.add_subcommand("group", "group inverse"), {"A"});
    add_files(app.add_subcommand("drazin", "Drazin inverse and index"), {"A"});
    add_files(app.add_subcommand("mary", "inverse of A along D"), {"A", "D"});

    auto* outer = app.add_subcommand("outer", "outer inverse with prescribed range/nullspace");
    add_files(outer, {"A"});
    outer->add_option("--range", req.range_file, "basis file for the range")->required();
    outer->add_option("--nullspace", req.nullsp_file, "basis file for the nullspace")->required();

    add_files(app.add_subcommand("pq", "(p,q)-outer inverse"), {"A", "P", "Q"});

    auto* specproj = app.add_subcommand("specproj", "spectral projection for a spectral set");
    add_files(specproj, {"A"});
    specproj->add_option("--disk", req.disk, "disk center-x center-y radius")->expected(3);
    specproj->add_option("--eigs", req.eigs_file, "file of selected eigenvalues");
    specproj->add_option("--route", req.route, "construction route")
        ->check(CLI::IsMember({"both", "schur", "contour"}));

    add_files(app.add_subcommand("kd", "Koliha-Drazin inverse"), {"A"});
    add_files(app.add_subcommand("diagnose", "existence report for the inverse along T"),
              {"A", "T"});

    auto* cert = app.add_subcommand("certify", "certificate for a claimed inverse");
    add_files(cert, {"A", "B"});
    cert->add_option("--kind", req.kind_name, "inverse kind")->required();
    cert->add_option("--along", req.along_file, "along element (kind mary)");
    cert->add_option("--p", req.p_file, "idempotent p (kind pq)");
    cert->add_option("--q", req.q_file, "idempotent q (kind pq)");
    cert->add_option("--range", req.range_file, "prescribed range basis");
    cert->add_option("--nullspace", req.nullsp_file, "prescribed nullspace basis");

    auto* plant = app.add_subcommand("plant", "write a planted along-invertible pair");
    plant->add_option("n", req.plant_n, "dimension")->required();
    plant->add_option("r", req.plant_r, "rank of the along element")->required();
    plant->add_option("seed", req.plant_seed, "random seed")->required();
    plant->add_option("--negative", req.negative_mode, "plant a non-existent pair (mode 0 or 1)")
        ->check(CLI::Range(0, 1));
    plant->add_option("--prefix", req.prefix, "output path prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    for (const auto* sub : app.get_subcommands()) req.sub = sub->get_name();

    if (tol_opt->count() == 0) {
        if (const char* env = std::getenv("GINV_TOL")) {
            try {
                std::size_t used = 0;
                req.tol = std::stod(env, &used);
                if (used != std::string(env).size()) throw std::invalid_argument("trailing text");
            } catch (const std::exception&) {
                std::cerr << "GINV_TOL is not a number: " << env << "\n";
                return 3;
            }
        }
    }

    try {
        return dispatch(req);
    } catch (const ginv::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const ginv::NumericalError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    }
}
