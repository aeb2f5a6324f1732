// Command-line surface for the exact quantization workbench: associator and
// twist solvers, r-matrix checks, cohomology reports, specialization to
// concrete Lie bialgebras, and the self-test fixtures.

#include "CLI11.hpp"

#include "uqa/artifact.hpp"
#include "uqa/cohomology.hpp"
#include "uqa/specialize.hpp"

#include <iostream>

using namespace uqa;

namespace {

int report_exit(const ReportArtifact& rep, const std::string& outfile) {
    for (const auto& l : rep.lines)
        std::cout << "check " << l.id << " " << (l.pass ? "pass" : "FAIL")
                  << (l.detail.empty() ? "" : "  (" + l.detail + ")") << "\n";
    if (!outfile.empty()) write_file(outfile, serialize_report(rep));
    return rep.ok() ? 0 : 1;
}

int run_selftest() {
    ReportArtifact rep;
    rep.name = "selftest";
    auto add = [&rep](const std::string& id, bool pass, const std::string& detail = "") {
        rep.lines.push_back({id, pass, detail});
    };

    // worked two-generator product identity
    {
        auto rij = [](int i, int j) {
            std::vector<AssocWord> xw(3), yw(3);
            xw[i - 1] = {1};
            yw[j - 1] = {1};
            UElement e{3, {}};
            e.terms.emplace(make_diagram(xw, yw), Rat(1));
            return e;
        };
        UElement lhs = u_product(make_t_ij(3, 2, 3), make_t_ij(3, 1, 3));
        UElement rhs = u_zero(3);
        u_add(rhs, u_product(rij(2, 3), rij(1, 3)));
        u_add(rhs, u_product(rij(3, 2), rij(1, 3)));
        u_add(rhs, u_product(rij(3, 1), rij(2, 3)));
        u_add(rhs, u_commutator(rij(2, 1), rij(2, 3)));
        u_add(rhs, u_commutator(rij(3, 1), rij(2, 1)));
        u_add(rhs, u_product(rij(3, 2), rij(3, 1)));
        add("selftest.worked-product", u_sub(lhs, rhs).is_zero());
    }
    // defining relations of the chord algebra in normal form
    {
        bool ok = chord_commutator(chord_gen(4, 1, 2), chord_gen(4, 3, 4)).is_zero();
        ChordElement s = chord_zero(3);
        chord_add(s, chord_gen(3, 1, 3));
        chord_add(s, chord_gen(3, 2, 3));
        ok = ok && chord_commutator(chord_gen(3, 1, 2), s).is_zero();
        add("selftest.chord-relations", ok);
    }
    // dimension counts
    {
        bool ok = true;
        long p = 2;
        for (int d = 1; d <= 4; ++d) {
            p *= 2;
            ok = ok && static_cast<long>(chord_basis(3, d).size()) == p - 1;
        }
        ok = ok && u_basis(2, 2).size() == 18 && u_basis(3, 2).size() == 72;
        add("selftest.dimensions", ok);
    }
    // degree-one twist component
    {
        Associator a = solve_associator(1);
        Twist tw = solve_twist(a, 1);
        add("selftest.twist-linear-term",
            u_sub(tw.j.comp[1], u_scale(make_r(), Rat(-1, 2))).is_zero());
    }
    // cohomology spot values
    {
        CohomReport h2 = wedge_report(2, 2);
        CohomReport h32 = wedge_report(3, 2);
        bool ok = h2.dim_h == 0 && h2.rank_out == h2.dim_space;
        std::ostringstream os;
        os << "second spot trivial at degree 2; third-spot degree-2 dimension " << h32.dim_h;
        add("selftest.cohomology", ok, os.str());
    }
    return report_exit(rep, "");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for universal quantization structures"};
    app.require_subcommand(1);

    // ---- assoc ----
    auto* assoc = app.add_subcommand("assoc", "associator solver and verifier");
    assoc->require_subcommand(1);
    auto* assoc_solve = assoc->add_subcommand("solve", "solve the relations degree by degree");
    int as_order = 3;
    bool as_impose = false;
    std::string as_out;
    assoc_solve->add_option("--order", as_order, "truncation order");
    assoc_solve->add_flag("--impose-alt-phi2", as_impose,
                          "pin the degree-2 antisymmetrization to (1/8)[t12,t23]");
    assoc_solve->add_option("-o,--output", as_out, "output artifact")->required();

    auto* assoc_verify = assoc->add_subcommand("verify", "verify the three relations");
    std::string av_in;
    int av_order = -1;
    bool av_grouplike = false;
    assoc_verify->add_option("artifact", av_in, "associator artifact")->required();
    assoc_verify->add_option("--order", av_order, "verification order (default: artifact order)");
    assoc_verify->add_flag("--check-grouplike", av_grouplike, "also check group-likeness");

    // ---- twist ----
    auto* twist = app.add_subcommand("twist", "twist solver and verifier");
    twist->require_subcommand(1);
    auto* twist_solve = twist->add_subcommand("solve", "solve the coboundary equation");
    std::string ts_assoc, ts_out;
    int ts_order = 3;
    twist_solve->add_option("--assoc", ts_assoc, "associator artifact")->required();
    twist_solve->add_option("--order", ts_order, "truncation order");
    twist_solve->add_option("-o,--output", ts_out, "output artifact")->required();

    auto* twist_verify = twist->add_subcommand("verify", "verify the coboundary equation");
    std::string tv_in;
    twist_verify->add_option("artifact", tv_in, "twist artifact")->required();

    // ---- rmatrix ----
    auto* rmx = app.add_subcommand("rmatrix", "build and check the universal braiding");
    rmx->require_subcommand(1);
    auto* rm_build = rmx->add_subcommand("build", "assemble from a twist");
    std::string rb_twist, rb_out;
    rm_build->add_option("--twist", rb_twist, "twist artifact")->required();
    rm_build->add_option("-o,--output", rb_out, "output artifact")->required();

    auto* rm_check = rmx->add_subcommand("check", "degreewise residual checks");
    std::string rc_in, rc_twist;
    rm_check->add_option("artifact", rc_in, "rmatrix artifact")->required();
    rm_check->add_option("--twist", rc_twist, "twist artifact for the coproduct identities");

    // ---- cohomology ----
    auto* coh = app.add_subcommand("cohomology", "rank computations");
    coh->require_subcommand(1);
    auto* coh_report = coh->add_subcommand("report", "dimensions of one spot");
    coh_report->set_help_flag("--help", "print help");
    std::string cr_complex = "wedge";
    int cr_h = 2, cr_degree = 2;
    bool cr_fine = false;
    coh_report->add_option("--complex", cr_complex, "wedge or cohoch")
        ->check(CLI::IsMember({"wedge", "cohoch"}));
    coh_report->add_option("--h", cr_h, "cohomological spot")->required();
    coh_report->add_option("--degree", cr_degree, "total degree")->required();
    coh_report->add_flag("--fine-blocks", cr_fine, "assemble from slot-type blocks");

    // ---- quantize ----
    auto* quant = app.add_subcommand("quantize", "evaluate on a concrete Lie bialgebra");
    std::string qa_bialg, qa_twist, qa_out;
    int qa_order = 2, qa_degcap = 2;
    quant->add_option("--bialgebra", qa_bialg, "bialgebra artifact (or 'borel2' / 'abelian2')")
        ->required();
    quant->add_option("--twist", qa_twist, "twist artifact")->required();
    quant->add_option("--hbar-order", qa_order, "series truncation");
    quant->add_option("--degree-cap", qa_degcap, "monomial degree cap for the flatness suite");
    quant->add_option("-o,--output", qa_out, "report artifact");

    // ---- selftest ----
    app.add_subcommand("selftest", "run the pinned fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (assoc_solve->parsed()) {
            Associator a = solve_associator(as_order, as_impose);
            write_file(as_out, serialize_associator(a));
            std::cout << "degree-2 commutator coefficient: " << a.phi2_coefficient << "\n";
            std::cout << "wrote " << as_out << "\n";
            return 0;
        }
        if (assoc_verify->parsed()) {
            Associator a = parse_associator(read_file(av_in));
            int order = av_order < 0 ? a.order : av_order;
            AssociatorReport rep = verify_associator(a.phi, order, av_grouplike);
            ReportArtifact out;
            out.name = "assoc-verify";
            auto degrees = [](const std::vector<int>& v) {
                std::string s;
                for (int d : v) s += (s.empty() ? "" : ",") + std::to_string(d);
                return s.empty() ? "" : "degrees " + s;
            };
            out.lines.push_back({"assoc.duality", rep.duality_bad.empty(), degrees(rep.duality_bad)});
            out.lines.push_back({"assoc.pentagon", rep.pentagon_bad.empty(), degrees(rep.pentagon_bad)});
            out.lines.push_back({"assoc.hexagon", rep.hexagon_bad.empty(), degrees(rep.hexagon_bad)});
            if (rep.grouplike.has_value())
                out.lines.push_back({"assoc.grouplike", *rep.grouplike, ""});
            return report_exit(out, "");
        }
        if (twist_solve->parsed()) {
            Associator a = parse_associator(read_file(ts_assoc));
            if (ts_order >= 5)
                std::cerr << "warning: order " << ts_order
                          << " splits run over very large bases; expect heavy memory use\n";
            Twist tw = solve_twist(a, ts_order);
            write_file(ts_out, serialize_twist(tw));
            std::cout << "wrote " << ts_out << "\n";
            return 0;
        }
        if (twist_verify->parsed()) {
            Twist tw = parse_twist(read_file(tv_in));
            USeries lhs = dtilde(tw.j);
            USeries rhs = mu_embed_series(tw.phi, tw.order);
            ReportArtifact out;
            out.name = "twist-verify";
            std::string bad;
            for (int k = 0; k <= tw.order; ++k)
                if (!u_sub(lhs.comp[k], rhs.comp[k]).is_zero())
                    bad += (bad.empty() ? "" : ",") + std::to_string(k);
            out.lines.push_back({"twist.coboundary", bad.empty(),
                                 bad.empty() ? "" : "degrees " + bad});
            out.lines.push_back({"twist.linear-term",
                                 u_sub(tw.j.comp[1], u_scale(make_r(), Rat(-1, 2))).is_zero(), ""});
            return report_exit(out, "");
        }
        if (rm_build->parsed()) {
            Twist tw = parse_twist(read_file(rb_twist));
            RMatrix R = build_R(tw);
            write_file(rb_out, serialize_rmatrix(R));
            std::cout << "wrote " << rb_out << "\n";
            return 0;
        }
        if (rm_check->parsed()) {
            RMatrix R = parse_rmatrix(read_file(rc_in));
            ReportArtifact out;
            out.name = "rmatrix-check";
            auto push = [&out](const DegreeReport& rep) {
                std::string bad;
                for (int d : rep.bad_degrees) bad += (bad.empty() ? "" : ",") + std::to_string(d);
                out.lines.push_back({rep.check, rep.ok(), bad.empty() ? "" : "degrees " + bad});
            };
            for (const auto& rep : check_qybe(R)) push(rep);
            for (const auto& rep : check_form(R)) push(rep);
            if (!rc_twist.empty()) {
                Twist tw = parse_twist(read_file(rc_twist));
                for (const auto& rep : check_quasitriangular(tw, R)) push(rep);
            }
            return report_exit(out, "");
        }
        if (coh_report->parsed()) {
            CohomReport rep = cr_complex == "wedge" ? wedge_report(cr_h, cr_degree, cr_fine)
                                                    : cohoch_report(cr_h, cr_degree);
            std::cout << "complex: " << rep.complex << "\n";
            std::cout << "spot: " << rep.spot << "  degree: " << rep.degree << "\n";
            std::cout << "dim space: " << rep.dim_space << "\n";
            std::cout << "rank out:  " << rep.rank_out << "\n";
            std::cout << "rank in:   " << rep.rank_in << "\n";
            std::cout << "dim H:     " << rep.dim_h << "\n";
            for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
            return 0;
        }
        if (quant->parsed()) {
            LieBialgebra b = qa_bialg == "borel2"
                                 ? make_borel2_bialgebra()
                                 : (qa_bialg == "abelian2" ? make_abelian_bialgebra(2)
                                                           : parse_bialgebra(read_file(qa_bialg)));
            Twist tw = parse_twist(read_file(qa_twist));
            ReportArtifact out;
            out.name = "quantize";
            BialgebraReport vb = validate_bialgebra(b);
            out.lines.push_back({"bialgebra.valid", vb.ok(), ""});
            if (vb.ok()) {
                QuantizeReport q = quantize(b, tw, qa_order);
                for (const auto& l : q.lines) out.lines.push_back(l);
                QuantizeReport f = flatness_check(b, tw, qa_order, qa_degcap);
                for (const auto& l : f.lines) out.lines.push_back(l);
            }
            return report_exit(out, qa_out);
        }
        // selftest
        return run_selftest();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
