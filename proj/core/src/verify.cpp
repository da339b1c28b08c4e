#include "sgreen/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "sgreen/blockdecomp.hpp"
#include "sgreen/green.hpp"
#include "sgreen/model.hpp"
#include "sgreen/oracle.hpp"
#include "sgreen/random.hpp"
#include "sgreen/siegel.hpp"

namespace sgreen {

namespace {

constexpr double kRelTol = 1e-9;

// margin accumulator; a sample registers as a violation when its normalized
// margin exceeds zero
class Property {
public:
    Property(std::string name, std::uint64_t seed) : seed_(seed) { result_.name = std::move(name); }

    void record(long index, double lhs, double rhs, double scale) {
        const double margin = (lhs - rhs) / std::max(scale, 1e-300);
        ++result_.samples;
        if (margin > result_.worst_margin) result_.worst_margin = margin;
        if (margin > 0.0) {
            ++result_.violations;
            if (result_.counterexample.empty()) {
                std::ostringstream os;
                os << "{\"property\":\"" << result_.name << "\",\"sample_index\":" << index
                   << ",\"seed\":" << seed_ << ",\"lhs\":" << lhs << ",\"rhs\":" << rhs
                   << ",\"margin\":" << margin << "}";
                result_.counterexample = os.str();
            }
        }
    }

    PropertyResult take() && { return std::move(result_); }
    PropertyResult& result() { return result_; }

private:
    PropertyResult result_;
    std::uint64_t seed_;
};

int sample_dim(long i) {
    static const int dims[] = {1, 2, 4, 8};
    return dims[i % 4];
}

// D with I_D guaranteed nonempty, plus a lambda inside the middle of I_D
struct BandedContext {
    RealSym D;
    SpectralParameter lam;
};

BandedContext banded_context(int m, std::mt19937_64& rng) {
    RealSym D = random_real_sym(m, rng, 0.25);
    auto [mu, V] = sym_eig(D.mat());
    const double lo = mu(m - 1) - 2.0, hi = mu(0) + 2.0;
    // J = middle half of I_D
    const double mid = 0.5 * (lo + hi), quarter = 0.25 * (hi - lo);
    std::uniform_real_distribution<double> ux(mid - quarter, mid + quarter);
    std::uniform_real_distribution<double> ue(1e-3, 1.0);
    return {std::move(D), SpectralParameter{ux(rng), ue(rng)}};
}

}  // namespace

std::vector<PropertyResult> verify_siegel(long samples, std::uint64_t seed) {
    Property iso_inv("siegel/isometry_neg_inv", seed);
    Property iso_tr("siegel/isometry_translate", seed);
    Property sym("siegel/cd_symmetry", seed);
    Property self("siegel/cd_self_zero", seed);
    Property tri("siegel/triangle_inequality", seed);
    Property nonexp("siegel/phi_nonexpansive", seed);
    Property resolv("siegel/resolvent_bound", seed);
    Property twostep("siegel/two_step_imag_lower_bound", seed);
    Property strict("siegel/strict_contraction_on_compacts", seed);
    double gamma_max = 0.0;

    auto rng = make_rng(seed);
    for (long i = 0; i < samples; ++i) {
        const int m = sample_dim(i);
        const SiegelPoint Z = random_siegel_point(m, rng);
        const SiegelPoint W = random_siegel_point(m, rng);
        const SiegelPoint Vp = random_siegel_point(m, rng);
        const RealSym S = random_real_sym(m, rng);
        const auto ctx = banded_context(m, rng);

        const double cZW = cd(Z, W);
        const double scale = 1.0 + cZW;
        iso_inv.record(i, std::abs(cd(mobius_neg_inv(Z), mobius_neg_inv(W)) - cZW), kRelTol * scale,
                       scale);
        iso_tr.record(i, std::abs(cd(translate(Z, S), translate(W, S)) - cZW), kRelTol * scale,
                      scale);
        sym.record(i, std::abs(cd(W, Z) - cZW), kRelTol * scale, scale);
        self.record(i, cd(Z, Z), 1e-12, 1.0);
        tri.record(i, dist(Z, W), dist(Z, Vp) + dist(Vp, W) + kRelTol * (1.0 + dist(Z, W)), 1.0);

        const SiegelPoint pZ = phi(Z, S, ctx.lam, ctx.D);
        const SiegelPoint pW = phi(W, S, ctx.lam, ctx.D);
        nonexp.record(i, dist(pZ, pW), dist(Z, W) * (1.0 + kRelTol) + 1e-12, 1.0);
        resolv.record(i, op_norm(pZ.mat()), (1.0 + kRelTol) / ctx.lam.eps, 1.0 / ctx.lam.eps);

        const SiegelPoint pp = phi(pZ, S, ctx.lam, ctx.D);
        const double denom = op_norm(pZ.mat()) + std::abs(ctx.lam.value()) +
                             op_norm(ctx.D.mat()) + op_norm(S.mat());
        auto [wpp, Upp] = sym_eig(pp.Y());
        twostep.record(i, ctx.lam.eps / (denom * denom) * (1.0 - kRelTol), wpp(0), wpp(0) + 1.0);

        // compact-set pair: bounded norm and imaginary part bounded below
        {
            std::uniform_real_distribution<double> ue(0.05, 0.5);
            const double eps = ue(rng);
            auto clampit = [&](const SiegelPoint& P) {
                Mat Y = P.Y() + 0.1 * Mat::Identity(m, m);
                Mat X = P.X();
                const double nrm = std::sqrt(X.squaredNorm() + Y.squaredNorm());
                const double cap = 1.0 / eps;
                if (nrm > cap) {
                    X *= cap / nrm;
                    Y = Y * (cap / nrm) + 0.05 * Mat::Identity(m, m);
                }
                return SiegelPoint(ComplexSym(RealSym(X), RealSym(Y)));
            };
            const SiegelPoint Zc = clampit(Z), Wc = clampit(W);
            const double d0 = dist(Zc, Wc);
            if (d0 > 1e-9) {
                RealSym x_shift = RealSym(Mat(ctx.lam.x * Mat::Identity(m, m)));
                SiegelPoint Zs = translate(Zc, x_shift);
                SiegelPoint Ws = translate(Wc, x_shift);
                Mat bump = Mat::Identity(m, m);
                const double eps_l = eps;
                SiegelPoint Zl(ComplexSym(RealSym(Zs.X()), RealSym(Mat(Zs.Y() + eps_l * bump))));
                SiegelPoint Wl(ComplexSym(RealSym(Ws.X()), RealSym(Mat(Ws.Y() + eps_l * bump))));
                const double gamma = dist(Zl, Wl) / d0;
                gamma_max = std::max(gamma_max, gamma);
                strict.record(i, gamma, 1.0 - 1e-12, 1.0);
            }
        }
    }
    strict.result().stat = gamma_max;
    strict.result().stat_name = "measured_gamma_max";

    std::vector<PropertyResult> out;
    for (Property* p : {&iso_inv, &iso_tr, &sym, &self, &tri, &nonexp, &resolv, &twostep, &strict})
        out.push_back(std::move(*p).take());
    return out;
}

std::vector<PropertyResult> verify_lemma25(long samples, std::uint64_t seed) {
    Property expansion("lemma25/cd_shift_expansion_identity", seed);
    Property eq12("lemma25/a_sq_le_4_cd_b", seed);
    Property eq14("lemma25/trace_inequality", seed);
    Property lin("lemma25/a_linear_in_delta", seed);
    Property pathwise("lemma25/ratio_le_1_plus_A_plus_C", seed);
    Property withc0("lemma25/ratio_le_1_plus_A_plus_C0_delta_sq", seed);

    struct Rec {
        double ratio, A, dn2;
    };
    std::vector<Rec> recs;
    recs.reserve(static_cast<std::size_t>(samples));
    double C0 = 0.0;

    auto rng = make_rng(seed);
    for (long i = 0; i < samples; ++i) {
        const int m = sample_dim(i);
        const auto ctx = banded_context(m, rng);
        const SiegelPoint Z = random_siegel_point(m, rng);
        const RealSym delta = random_real_sym(m, rng, 0.5);
        const Lemma25Report r = lemma25_report(Z, delta, ctx.lam, ctx.D);
        const SiegelPoint Zl = free_fixed_point(ctx.lam, ctx.D);

        // cd(Z - delta, Z_lambda) = cd_lambda(Z) + a + b
        const SiegelPoint shifted =
            SiegelPoint(ComplexSym(CMat(Z.mat() - delta.mat().cast<Complex>())));
        const double lhs_exp = cd(shifted, Zl);
        const double rhs_exp = r.cd_l + r.a + r.b;
        const double sc = 1.0 + std::abs(lhs_exp);
        expansion.record(i, std::abs(lhs_exp - rhs_exp), kRelTol * sc, sc);

        const double sc12 = 1.0 + r.a * r.a;
        eq12.record(i, r.a * r.a, 4.0 * r.cd_l * r.b + kRelTol * sc12, sc12);

        const double tr14 = (Zl.Ysqrt() * Z.Yinv() * Zl.Ysqrt()).trace();
        eq14.record(i, tr14, r.cd_l + 2.0 * m + kRelTol * (1.0 + tr14), 1.0 + tr14);

        std::uniform_real_distribution<double> us(-2.0, 2.0);
        const double s = us(rng);
        const Lemma25Report rs =
            lemma25_report(Z, RealSym(Mat(s * delta.mat())), ctx.lam, ctx.D);
        const double scl = 1.0 + std::abs(r.a);
        lin.record(i, std::abs(rs.a - s * r.a), kRelTol * scl * (1.0 + std::abs(s)), scl);

        pathwise.record(i, r.lhs_ratio, r.bound_rhs + kRelTol * (1.0 + r.bound_rhs),
                        1.0 + r.bound_rhs);

        const double dn = op_norm(delta.mat());
        if (dn > 1e-12) C0 = std::max(C0, r.C / (dn * dn));
        recs.push_back({r.lhs_ratio, r.A, dn * dn});
    }
    for (long i = 0; i < static_cast<long>(recs.size()); ++i) {
        const auto& rec = recs[static_cast<std::size_t>(i)];
        const double rhs = 1.0 + rec.A + C0 * rec.dn2;
        withc0.record(i, rec.ratio, rhs + kRelTol * (1.0 + rhs), 1.0 + rhs);
    }
    withc0.result().stat = C0;
    withc0.result().stat_name = "measured_C0";

    std::vector<PropertyResult> out;
    for (Property* p : {&expansion, &eq12, &eq14, &lin, &pathwise, &withc0})
        out.push_back(std::move(*p).take());
    return out;
}

std::vector<PropertyResult> verify_appendix_b(long samples, std::uint64_t seed) {
    Property pa("appendixB/a_parallelogram_bound", seed);
    Property pb("appendixB/b_shift_bound", seed);
    Property pc("appendixB/c_trace_im_bound", seed);

    auto rng = make_rng(seed);
    for (long i = 0; i < samples; ++i) {
        const int m = sample_dim(i);
        const SiegelPoint Z0 = random_siegel_point(m, rng);
        const SiegelPoint Z1 = random_siegel_point(m, rng);
        const SiegelPoint Z2 = random_siegel_point(m, rng);
        const RealSym delta = random_real_sym(m, rng);

        const SiegelPoint twoZ0(ComplexSym(CMat(2.0 * Z0.mat())));
        const SiegelPoint sum12(ComplexSym(CMat(Z1.mat() + Z2.mat())));
        const double lhs_a = cd(twoZ0, sum12);
        const double rhs_a = 0.5 * (cd(Z0, Z1) + cd(Z0, Z2));
        pa.record(i, lhs_a, rhs_a + kRelTol * (1.0 + rhs_a), 1.0 + rhs_a);

        // C from the proof chain: 2 (1 + 2m ||Y0^{-1}||^2)
        const double Cb = 2.0 * (1.0 + 2.0 * m * std::pow(op_norm(Z0.Yinv()), 2));
        const SiegelPoint shifted(ComplexSym(CMat(delta.mat().cast<Complex>() + Z1.mat())));
        const double dn = op_norm(delta.mat());
        const double lhs_b = cd(Z0, shifted);
        const double rhs_b = Cb * (1.0 + dn * dn) * (cd(Z0, Z1) + 1.0);
        pb.record(i, lhs_b, rhs_b + kRelTol * (1.0 + rhs_b), 1.0 + rhs_b);

        const auto ctx = banded_context(m, rng);
        const SiegelPoint Zl = free_fixed_point(ctx.lam, ctx.D);
        // C = 2m / C' with C' = 1/||Y_lambda||
        const double Cc = 2.0 * m * op_norm(Zl.Y());
        const double lhs_c = Z0.Y().trace();
        const double rhs_c = Cc * (cd(Zl, Z0) + 1.0);
        pc.record(i, lhs_c, rhs_c + kRelTol * (1.0 + rhs_c), 1.0 + rhs_c);
    }

    std::vector<PropertyResult> out;
    for (Property* p : {&pa, &pb, &pc}) out.push_back(std::move(*p).take());
    return out;
}

std::vector<PropertyResult> verify_oracle(long samples, std::uint64_t seed) {
    Property nested("oracle/nested_phi_schur_identity", seed);
    Property symm("oracle/dense_block_complex_symmetric", seed);

    auto rng = make_rng(seed);
    for (long i = 0; i < samples; ++i) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const long depth = 1 + static_cast<long>(rng() % 25);
        OperatorSpec spec(random_real_sym(m, rng, 0.3));
        DisorderModel model(DisorderKind::diagonal_iid, m, 0.8, 0.0);
        const PotentialSample q = sample_potential(model, rng(), -depth - 2, depth + 2);
        std::uniform_real_distribution<double> ux(-1.0, 1.0), ue(0.05, 1.0);
        const SpectralParameter lam{ux(rng), ue(rng)};

        const ComplexSym direct = half_line_block(spec, q, lam, 0, depth);

        // nested Phi composition terminated at the single-site resolvent
        CMat seed_arg = lam.value() * CMat::Identity(m, m) - spec.D().mat().cast<Complex>() -
                        q.at(depth).mat().cast<Complex>();
        SiegelPoint Z(ComplexSym(CMat(-cs_inverse(ComplexSym(std::move(seed_arg))).mat())));
        for (long n = depth - 1; n >= 0; --n) Z = phi(Z, q.at(n), lam, spec.D());

        const double scale = 1.0 + direct.mat().norm();
        nested.record(i, (direct.mat() - Z.mat()).norm(), 1e-10 * scale, scale);

        const DenseWindowOperator opr = assemble(spec, q, -4, 4);
        const long N = opr.matrix().rows();
        CMat A = opr.matrix().cast<Complex>() - lam.value() * CMat::Identity(N, N);
        CMat inv = A.partialPivLu().solve(CMat::Identity(N, N));
        CMat blk = inv.block(0, 0, m, m);
        symm.record(i, (blk - blk.transpose()).norm(), 1e-11 * std::max(1.0, blk.norm()),
                    std::max(1.0, blk.norm()));
    }

    std::vector<PropertyResult> out;
    for (Property* p : {&nested, &symm}) out.push_back(std::move(*p).take());
    return out;
}

std::vector<PropertyResult> verify_blockdecomp(long samples, std::uint64_t seed) {
    Property idem("blockdecomp/projection_idempotent", seed);
    Property comm("blockdecomp/projection_commutes", seed);
    Property compl_("blockdecomp/P1_plus_P2_identity", seed);
    Property rank("blockdecomp/projection_rank", seed);
    Property perturb("blockdecomp/Pi_minus_pi_envelope", seed);
    Property antisym("blockdecomp/Q2_eq_minus_Q1_transpose", seed);
    Property graph("blockdecomp/range_P1_is_graph_Q1", seed);
    Property intertwine("blockdecomp/intertwining_residual", seed);
    Property offdiag("blockdecomp/offdiagonal_residual", seed);
    Property evals("blockdecomp/eigenvalues_preserved", seed);

    auto rng = make_rng(seed);
    for (long i = 0; i < samples; ++i) {
        const int d1 = 1 + static_cast<int>(rng() % 8);
        const int d2 = 1 + static_cast<int>(rng() % 8);
        // sigma(H1) inside (-1, 1), sigma(H2) in (2, 6): gap at least 1
        Mat A1 = random_real_sym(d1, rng).mat();
        A1 *= 0.9 / std::max(op_norm(A1), 1e-12);
        Mat A2 = random_real_sym(d2, rng).mat();
        A2 *= 1.9 / std::max(op_norm(A2), 1e-12);
        A2 += 4.0 * Mat::Identity(d2, d2);
        BlockOperator B0(RealSym(A1), RealSym(A2), Mat::Zero(d1, d2));
        const double g = B0.spectral_gap();
        std::uniform_real_distribution<double> uv(0.1, 1.0);
        Mat V = random_gaussian(d1, d2, rng);
        V *= uv(rng) * (g / 8.0) / std::max(op_norm(V), 1e-12);
        BlockOperator B(RealSym(A1), RealSym(A2), V);

        ContourSpec c1;
        c1.center_re = 0.0;
        c1.radius = 1.55;
        ContourSpec c2 = c1;
        c2.center_re = 4.0;
        c2.radius = 2.4;

        const Mat P1 = riesz_projection(B, c1);
        const Mat P2 = riesz_projection(B, c2);
        const int n = d1 + d2;

        idem.record(i, (P1 * P1 - P1).norm(), 1e-9, 1.0);
        comm.record(i, (P1 * B.assembled() - B.assembled() * P1).norm(), 1e-9, 1.0);
        compl_.record(i, (P1 + P2 - Mat::Identity(n, n)).norm(), 1e-9, 1.0);
        rank.record(i, std::abs(P1.trace() - d1), 1e-6, 1.0);

        Mat p1 = Mat::Zero(n, n);
        p1.topLeftCorner(d1, d1) = Mat::Identity(d1, d1);
        perturb.record(i, op_norm(Mat(P1 - p1)), 2.0 * B.v_norm() / g, 1.0);

        const GraphOperators Q = graph_operators(B, P1);
        antisym.record(i, (Q.Q2 + Q.Q1.transpose()).norm(), 1e-8, 1.0);

        Mat G = Mat::Zero(n, d1);
        G.topRows(d1) = Mat::Identity(d1, d1);
        G.bottomRows(d2) = Q.Q1;
        const Mat Pgraph = G * (G.transpose() * G).ldlt().solve(G.transpose());
        graph.record(i, (P1 - Pgraph).norm(), 1e-8, 1.0);

        const BlockDiagonalization bd = block_diagonalize(B, Q);
        intertwine.record(i, bd.intertwine_residual, 1e-8, 1.0);
        offdiag.record(i, bd.offdiag_residual, 1e-8, 1.0);

        auto [wv, Uv] = sym_eig(B.assembled());
        // A_i is similar (not equal) to the symmetric diagonal block of
        // U^T H_V U; eigenvalues agree, so check through the conjugation
        const Mat conj = bd.U.transpose() * B.assembled() * bd.U;
        Vec wa(n);
        auto [w1, V1] = sym_eig(Mat(conj.topLeftCorner(d1, d1)));
        auto [w2, V2] = sym_eig(Mat(conj.bottomRightCorner(d2, d2)));
        wa.head(d1) = w1;
        wa.tail(d2) = w2;
        std::sort(wa.data(), wa.data() + n);
        evals.record(i, (wa - wv).cwiseAbs().maxCoeff(), 1e-8, 1.0);
    }

    std::vector<PropertyResult> out;
    for (Property* p : {&idem, &comm, &compl_, &rank, &perturb, &antisym, &graph, &intertwine,
                        &offdiag, &evals})
        out.push_back(std::move(*p).take());
    return out;
}

std::vector<PropertyResult> verify_suite(const std::string& suite, long samples,
                                         std::uint64_t seed) {
    if (suite == "siegel") return verify_siegel(samples, seed);
    if (suite == "lemma25") return verify_lemma25(samples, seed);
    if (suite == "appendixB") return verify_appendix_b(samples, seed);
    if (suite == "oracle") return verify_oracle(samples, seed);
    if (suite == "blockdecomp") return verify_blockdecomp(samples, seed);
    if (suite == "all") {
        std::vector<PropertyResult> out;
        for (const char* s : {"siegel", "lemma25", "appendixB", "oracle", "blockdecomp"}) {
            auto part = verify_suite(s, samples, seed);
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
        return out;
    }
    throw InvalidParameter("unknown verify suite: " + suite);
}

}  // namespace sgreen
