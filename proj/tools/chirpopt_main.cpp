// chirpopt command-line front end: scene generation, Fresnel propagation,
// single-scale chirplet CWT/ICWT, wavelet verification, hologram order
// filtering, and the four-panel end-to-end pipeline.
//
// Units at the boundary: wavelengths in nm, every other length in mm.
// Exit codes: 0 success, 1 usage or I/O error, 2 numeric-validity refusal.

#include <array>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chirpopt/chirpopt.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace chirpopt;

namespace {

constexpr double kNmToMm = 1e-6;

json params_json(const ChirpletParams& p) {
  return json{{"sigma_mm", p.sigma},
              {"wavelength_mm", p.wavelength},
              {"z_mm", p.z},
              {"carrier_w0_rad_per_mm", p.carrier_w0},
              {"carrier_theta_rad", p.carrier_theta},
              {"alpha", p.alpha()},
              {"beta", p.beta()}};
}

json grid_json(const Grid2D& g) {
  return json{{"n", g.n}, {"pitch_mm", g.pitch}, {"window_mm", g.window()}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << '\n';
}

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct SceneArgs {
  double width = 6.0, height = 2.0, radius = 1.0;
  double slit_width = 0.5, separation = 3.0;
  int n = 512;
  double pitch = 0.25;
  double lambda_nm = 550.0;
  std::string out;
};

struct PropagateArgs {
  std::string in, out;
  double z = 54000.0;
  double lambda_nm = 0.0;  // 0: take the wavelength from the input field
  std::string method = "transfer_function";
  std::string inverse;  // empty: forward
  double max_window = 0.0;
};

struct WaveletArgs {
  double sigma = 1.0;
  double wavelet_lambda = 1.0;  // mm; default mother wavelet lambda*z = pi
  double wavelet_z = kPi;
  std::string carrier = "on";
  double w0 = -1.0;  // <0: default 2*pi/wavelet_lambda when carrier is on
  double theta = kPi / 4.0;

  ChirpletParams build() const {
    std::optional<double> w;
    if (carrier == "off")
      w = 0.0;
    else if (w0 >= 0.0)
      w = w0;
    return make_chirplet(sigma, wavelet_lambda, wavelet_z, w, theta);
  }
};

struct CwtArgs {
  std::string in, out;
  double scale = 0.0;
  double from_z = 0.0;
  std::string route = "spectral";
  WaveletArgs wavelet;

  double resolve_scale(double field_wavelength) const {
    if (scale > 0.0) return scale;
    return scale_from_distance(field_wavelength, from_z);
  }
};

struct VerifyArgs {
  WaveletArgs wavelet;
  double lambda_nm = 550.0;
  double z = 54000.0;
  int moments = 35;
  int n = 1024;
  double window = 0.0;  // 0: 32*sigma
  std::string out;
};

struct HolofilterArgs {
  std::string in, out_dir;
  double tilt = 1.0;
  double phi = 0.0;
  std::string order = "+1";
  double sigma = 0.5;
  double scale = 1.0;
  double ratio = 1.0;
  double wavelet_lambda = 1.0;
  double wavelet_z = kPi;
  double dc_radius = 3.0;
  double order_radius = 3.0;
};

struct Fig2Args {
  std::string out_dir;
  int n = 512;
  double pitch = 0.25;
  double lambda_nm = 550.0;
  double z = 54000.0;
  double width = 6.0, height = 2.0;
  double recon_sigma = 0.03;
  double recon_w0 = 2.0;
  bool stamp = false;
};

void add_wavelet_flags(CLI::App* cmd, WaveletArgs& w) {
  cmd->add_option("--sigma-mm", w.sigma, "wavelet Gaussian width (mm)")->required();
  cmd->add_option("--wavelet-lambda-mm", w.wavelet_lambda,
                  "wavelet wavelength (mm); with --wavelet-z-mm fixes the chirp rate "
                  "beta = pi/(lambda*z), default beta = 1");
  cmd->add_option("--wavelet-z-mm", w.wavelet_z, "wavelet distance parameter (mm)");
  cmd->add_option("--carrier", w.carrier, "carrier mode")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--w0-rad-per-mm", w.w0,
                  "carrier frequency; default 2*pi/wavelet-lambda when carrier is on");
  cmd->add_option("--theta-rad", w.theta, "carrier direction");
}

int run_scene(const CLI::App& scene_cmd, const SceneArgs& a) {
  const Grid2D grid = make_grid(a.n, a.pitch);
  const double lambda = a.lambda_nm * kNmToMm;
  ComplexField field;
  if (scene_cmd.got_subcommand("rect"))
    field = rect_aperture(a.width, a.height, grid, lambda);
  else if (scene_cmd.got_subcommand("circ"))
    field = circ_aperture(a.radius, grid, lambda);
  else
    field = double_slit(a.slit_width, a.separation, a.height, grid, lambda);
  write_cfield(a.out, field);
  return 0;
}

int run_propagate(const PropagateArgs& a) {
  ComplexField field = read_cfield(a.in);
  PropagationParams p;
  p.wavelength = a.lambda_nm > 0.0 ? a.lambda_nm * kNmToMm : field.wavelength;
  p.z = a.z;
  p.method = a.method == "direct_quadrature" ? PropagationMethod::direct_quadrature
                                             : PropagationMethod::transfer_function;
  ComplexField out;
  if (a.inverse.empty())
    out = fresnel_forward(field, p);
  else if (a.inverse == "fraunhofer")
    out = fraunhofer_inverse(field, p, a.max_window);
  else if (a.inverse == "fresnel")
    out = fresnel_inverse(field, p, a.max_window);
  else
    out = angular_spectrum_inverse(field, p);
  write_cfield(a.out, out);
  return 0;
}

int run_cwt(const CwtArgs& a) {
  ComplexField field = read_cfield(a.in);
  CwtQuery query;
  query.wavelet = a.wavelet.build();
  query.scale_s = a.resolve_scale(field.wavelength);
  CwtResult result = a.route == "direct" ? cwt_forward_direct(field, query)
                                         : cwt_forward_spectral(field, query);
  write_cfield(a.out, result.coefficients);
  json meta = {{"scale_s_mm", result.scale_s},
               {"k_constant_abs", std::abs(result.k_constant)},
               {"k_constant_arg", std::arg(result.k_constant)},
               {"admissibility_c", result.admissibility_c},
               {"wavelet", params_json(query.wavelet)},
               {"warnings", result.warnings}};
  std::cout << meta.dump(2) << '\n';
  return 0;
}

int run_icwt(const CwtArgs& a) {
  ComplexField coeffs = read_cfield(a.in);
  const ChirpletParams wavelet = a.wavelet.build();
  const double s = a.resolve_scale(coeffs.wavelength);
  CwtResult result;
  result.coefficients = coeffs;
  result.scale_s = s;
  result.k_constant = propagator_constant(wavelet.wavelength, kPi * s * s / wavelet.wavelength);
  result.admissibility_c = admissibility_constant(wavelet, coeffs.grid, &result.warnings);
  ComplexField out = a.route == "direct" ? icwt_direct(result, wavelet)
                                         : icwt_spectral(result, wavelet);
  write_cfield(a.out, out);
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
  return 0;
}

int run_verify(const VerifyArgs& a) {
  WaveletArgs w = a.wavelet;
  w.wavelet_lambda = a.lambda_nm * kNmToMm;
  w.wavelet_z = a.z;
  const ChirpletParams params = w.build();
  const double window = a.window > 0.0 ? a.window : 32.0 * params.sigma;
  const Grid2D grid = make_grid(a.n, window / a.n);
  const WaveletReport report = make_wavelet_report(params, grid, a.moments);
  json moments = json::array();
  for (const MomentResidual& m : report.moments)
    moments.push_back({{"order", m.order}, {"residual", m.residual}});
  json j = {{"params", params_json(report.params)},
            {"grid", grid_json(report.grid)},
            {"energy", report.energy},
            {"mean_abs", report.mean_abs},
            {"moments", moments},
            {"admissibility_c", report.admissibility_c},
            {"spectrum_origin_abs", report.spectrum_origin_abs},
            {"notes", report.notes}};
  if (a.out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json(a.out, j);
  return 0;
}

ComplexField spectrum_view(const Spectrum& s) {
  ComplexField f;
  f.grid = s.grid;
  f.samples = s.samples;
  f.wavelength = s.wavelength;
  return f;
}

int run_holofilter(const HolofilterArgs& a) {
  ComplexField object = read_cfield(a.in);
  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);

  HologramSpec spec;
  spec.object = object;
  spec.reference_tilt_w = a.tilt;
  spec.reference_angle_phi = a.phi;
  spec.amplitude_ratio = a.ratio;
  const ComplexField holo = synth_hologram(spec);

  // The passband is steered by the wavelet carrier: w0 = s*tilt puts the
  // response of the s-dilated wavelet exactly on the +1 (or, with theta
  // rotated by pi, the -1) order.
  const double theta = a.order == "-1" ? a.phi + kPi : a.phi;
  const ChirpletParams wavelet =
      make_chirplet(a.sigma, a.wavelet_lambda, a.wavelet_z, a.scale * a.tilt, theta);
  const ComplexField filtered = filter_order(holo, wavelet, a.scale, {0.0, 0.0});

  const std::array<double, 2> plus1{a.tilt * std::cos(a.phi), a.tilt * std::sin(a.phi)};
  const SuppressionReport rep =
      suppression_metrics(holo, filtered, a.dc_radius, plus1, a.order_radius);

  write_cfield(dir / "filtered.cfield", filtered);
  export_image(spectrum_view(ft_forward(holo)), ImageMode::log_amplitude, dir / "before.pgm");
  export_image(spectrum_view(ft_forward(filtered)), ImageMode::log_amplitude, dir / "after.pgm");
  json j = {{"reference", {{"tilt_rad_per_mm", a.tilt},
                           {"phi_rad", a.phi},
                           {"amplitude_ratio", a.ratio},
                           {"order", a.order}}},
            {"wavelet", params_json(wavelet)},
            {"scale_s_mm", a.scale},
            {"discs", {{"dc_radius_rad_per_mm", a.dc_radius},
                       {"order_radius_rad_per_mm", a.order_radius},
                       {"plus1_center_rad_per_mm", {plus1[0], plus1[1]}}}},
            {"dc_suppression_db", rep.dc_db},
            {"twin_suppression_db", rep.twin_db},
            {"plus1_loss_db", rep.plus1_db},
            {"masses", {{"dc_before", rep.dc_mass_before},
                        {"dc_after", rep.dc_mass_after},
                        {"twin_before", rep.twin_mass_before},
                        {"twin_after", rep.twin_mass_after},
                        {"plus1_before", rep.plus1_mass_before},
                        {"plus1_after", rep.plus1_mass_after}}}};
  write_json(dir / "metrics.json", j);
  return 0;
}

int run_fig2(const Fig2Args& a) {
  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  const double lambda = a.lambda_nm * kNmToMm;
  const Grid2D grid = make_grid(a.n, a.pitch);

  const ComplexField object = rect_aperture(a.width, a.height, grid, lambda);
  export_image(object, ImageMode::amplitude, dir / "object.pgm");

  PropagationParams prop{lambda, a.z, PropagationMethod::transfer_function};
  const ComplexField diffracted = fresnel_forward(object, prop);
  export_image(diffracted, ImageMode::amplitude, dir / "fresnel_amp.pgm");

  const double s = scale_from_distance(lambda, a.z);

  // Diffraction-as-CWT panel: pure-chirp wavelet, window much narrower than
  // the Gaussian so the transform approaches the plain Fresnel convolution.
  const double sigma_wide = 8.0 * grid.half_window();
  CwtQuery wide{s, make_chirplet(sigma_wide, 1.0, kPi, 0.0)};
  CwtResult cwt_wide = cwt_forward_spectral(object, wide);
  ComplexField cwt_scaled = cwt_wide.coefficients;
  for (cplx& c : cwt_scaled.samples) c *= cwt_wide.k_constant;
  export_image(cwt_scaled, ImageMode::amplitude, dir / "cwt_amp.pgm");
  const double ncc_cwt = ncc_modulus(cwt_scaled.samples, diffracted.samples);
  const double gap_cwt = normalized_modulus_gap(cwt_scaled.samples, diffracted.samples);

  // Reconstruction panel: carrier-mode wavelet, invertible transform.
  CwtQuery recon{s, make_chirplet(a.recon_sigma, 1.0, kPi, a.recon_w0)};
  CwtResult cwt_recon = cwt_forward_spectral(object, recon);
  const ComplexField reconstructed = icwt_spectral(cwt_recon, recon.wavelet);
  export_image(reconstructed, ImageMode::amplitude, dir / "icwt_amp.pgm");
  const double ncc_recon = ncc_modulus(reconstructed.samples, object.samples);

  json j = {{"grid", grid_json(grid)},
            {"wavelength_mm", lambda},
            {"z_mm", a.z},
            {"aperture_mm", {a.width, a.height}},
            {"scale_s_mm", s},
            {"k_constant_abs", std::abs(cwt_wide.k_constant)},
            {"correspondence", {{"sigma_mm", sigma_wide},
                                {"ncc_cwt_vs_fresnel", ncc_cwt},
                                {"normalized_l2_gap", gap_cwt}}},
            {"reconstruction", {{"wavelet", params_json(recon.wavelet)},
                                {"admissibility_c", cwt_recon.admissibility_c},
                                {"ncc_vs_object", ncc_recon},
                                {"warnings", cwt_recon.warnings}}}};
  if (a.stamp) j["generated_at"] = iso_timestamp();
  write_json(dir / "report.json", j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chirpopt: scalar Fresnel diffraction as a single-scale 2D chirplet CWT"};
  app.require_subcommand(1);

  SceneArgs scene_args;
  CLI::App* scene_cmd = app.add_subcommand("scene", "generate test objects (.cfield)");
  scene_cmd->require_subcommand(1);
  CLI::App* rect = scene_cmd->add_subcommand("rect", "rectangular aperture");
  rect->add_option("--width-mm", scene_args.width)->required();
  rect->add_option("--height-mm", scene_args.height)->required();
  CLI::App* circ = scene_cmd->add_subcommand("circ", "circular aperture");
  circ->add_option("--radius-mm", scene_args.radius)->required();
  CLI::App* dslit = scene_cmd->add_subcommand("double_slit", "double slit");
  dslit->add_option("--slit-width-mm", scene_args.slit_width)->required();
  dslit->add_option("--separation-mm", scene_args.separation)->required();
  dslit->add_option("--height-mm", scene_args.height)->required();
  for (CLI::App* sub : {rect, circ, dslit}) {
    sub->add_option("--n", scene_args.n)->required();
    sub->add_option("--pitch-mm", scene_args.pitch)->required();
    sub->add_option("--lambda-nm", scene_args.lambda_nm);
    sub->add_option("--out", scene_args.out)->required();
  }

  PropagateArgs prop_args;
  CLI::App* prop_cmd = app.add_subcommand("propagate", "Fresnel / inverse propagation");
  prop_cmd->add_option("--in", prop_args.in)->required();
  prop_cmd->add_option("--out", prop_args.out)->required();
  prop_cmd->add_option("--z-mm", prop_args.z)->required();
  prop_cmd->add_option("--lambda-nm", prop_args.lambda_nm,
                       "override the wavelength stored in the input field");
  prop_cmd->add_option("--method", prop_args.method)
      ->check(CLI::IsMember({"transfer_function", "direct_quadrature"}));
  prop_cmd->add_option("--inverse", prop_args.inverse, "invert instead of propagating forward")
      ->check(CLI::IsMember({"fraunhofer", "fresnel", "angular"}));
  prop_cmd->add_option("--max-window-mm", prop_args.max_window,
                       "refuse single-transform inverses whose native output window exceeds this");

  CwtArgs cwt_args;
  CLI::App* cwt_cmd = app.add_subcommand("cwt", "forward single-scale chirplet CWT");
  CwtArgs icwt_args;
  CLI::App* icwt_cmd = app.add_subcommand("icwt", "inverse single-scale chirplet CWT");
  for (auto [cmd, args] : {std::pair{cwt_cmd, &cwt_args}, std::pair{icwt_cmd, &icwt_args}}) {
    cmd->add_option("--in", args->in)->required();
    cmd->add_option("--out", args->out)->required();
    CLI::Option* sc = cmd->add_option("--scale-mm", args->scale, "transform scale s");
    cmd->add_option("--from-z-mm", args->from_z,
                    "derive s = sqrt(lambda*z/pi) from a propagation distance")
        ->excludes(sc);
    cmd->add_option("--route", args->route)->check(CLI::IsMember({"direct", "spectral"}));
    add_wavelet_flags(cmd, args->wavelet);
  }

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "wavelet condition report (JSON)");
  verify_cmd->add_option("--sigma-mm", verify_args.wavelet.sigma)->required();
  verify_cmd->add_option("--lambda-nm", verify_args.lambda_nm);
  verify_cmd->add_option("--z-mm", verify_args.z);
  verify_cmd->add_option("--moments", verify_args.moments);
  verify_cmd->add_option("--carrier", verify_args.wavelet.carrier)
      ->check(CLI::IsMember({"on", "off"}));
  verify_cmd->add_option("--w0-rad-per-mm", verify_args.wavelet.w0);
  verify_cmd->add_option("--theta-rad", verify_args.wavelet.theta);
  verify_cmd->add_option("--n", verify_args.n);
  verify_cmd->add_option("--window-mm", verify_args.window, "default 32*sigma");
  verify_cmd->add_option("--out", verify_args.out, "default stdout");

  HolofilterArgs holo_args;
  CLI::App* holo_cmd = app.add_subcommand("holofilter", "off-axis hologram order filtering");
  holo_cmd->add_option("--in", holo_args.in, "object field (.cfield)")->required();
  holo_cmd->add_option("--out-dir", holo_args.out_dir)->required();
  holo_cmd->add_option("--tilt-rad-per-mm", holo_args.tilt)->required();
  holo_cmd->add_option("--phi-rad", holo_args.phi)->required();
  holo_cmd->add_option("--order", holo_args.order)->check(CLI::IsMember({"+1", "-1"}));
  holo_cmd->add_option("--sigma-mm", holo_args.sigma)->required();
  holo_cmd->add_option("--scale-mm", holo_args.scale)->required();
  holo_cmd->add_option("--ratio", holo_args.ratio, "reference/object amplitude ratio");
  holo_cmd->add_option("--wavelet-lambda-mm", holo_args.wavelet_lambda);
  holo_cmd->add_option("--wavelet-z-mm", holo_args.wavelet_z);
  holo_cmd->add_option("--dc-radius", holo_args.dc_radius, "DC disc radius (rad/mm)");
  holo_cmd->add_option("--order-radius", holo_args.order_radius, "order disc radius (rad/mm)");

  Fig2Args fig2_args;
  CLI::App* fig2_cmd = app.add_subcommand("fig2", "end-to-end four-panel pipeline");
  fig2_cmd->add_option("--out", fig2_args.out_dir)->required();
  fig2_cmd->add_option("--n", fig2_args.n);
  fig2_cmd->add_option("--pitch-mm", fig2_args.pitch);
  fig2_cmd->add_option("--lambda-nm", fig2_args.lambda_nm);
  fig2_cmd->add_option("--z-mm", fig2_args.z);
  fig2_cmd->add_option("--width-mm", fig2_args.width);
  fig2_cmd->add_option("--height-mm", fig2_args.height);
  fig2_cmd->add_option("--recon-sigma-mm", fig2_args.recon_sigma);
  fig2_cmd->add_option("--recon-w0-rad-per-mm", fig2_args.recon_w0);
  fig2_cmd->add_flag("--stamp", fig2_args.stamp, "include a timestamp in report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(scene_cmd)) return run_scene(*scene_cmd, scene_args);
    if (app.got_subcommand(prop_cmd)) return run_propagate(prop_args);
    if (app.got_subcommand(cwt_cmd)) return run_cwt(cwt_args);
    if (app.got_subcommand(icwt_cmd)) return run_icwt(icwt_args);
    if (app.got_subcommand(verify_cmd)) return run_verify(verify_args);
    if (app.got_subcommand(holo_cmd)) return run_holofilter(holo_args);
    if (app.got_subcommand(fig2_cmd)) return run_fig2(fig2_args);
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
