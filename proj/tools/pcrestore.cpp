// pcrestore: piecewise-constant restoration of damaged color images.
//
// Subcommands: restore, energy, oracle, diagnose, fit, synth, check-L.
// Exit codes: 0 success, 1 I/O or parse error, 2 validation/size error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcr/core.hpp"
#include "pcr/diagnostics.hpp"
#include "pcr/distortion.hpp"
#include "pcr/energy.hpp"
#include "pcr/io.hpp"
#include "pcr/oracle.hpp"
#include "pcr/palette_solver.hpp"
#include "pcr/solver.hpp"

namespace {

using nlohmann::json;

struct GlobalFlags {
  uint64_t seed = 0;
  int neighborhood = 4;
  double lambda = 1.0;
  double mu = 1.0;
  double p = 2.0;
  double h = 1.0;
};

void add_global_flags(CLI::App* cmd, GlobalFlags* g) {
  cmd->add_option("--seed", g->seed, "RNG seed");
  cmd->add_option("--neighborhood", g->neighborhood, "4 or 8")
      ->check(CLI::IsMember({4, 8}));
  cmd->add_option("--lambda", g->lambda, "fidelity weight outside D");
  cmd->add_option("--mu", g->mu, "fidelity weight inside D");
  cmd->add_option("--p", g->p, "fidelity exponent (>= 1)");
  cmd->add_option("--spacing", g->h, "pixel spacing h");
}

pcr::GridGeometry base_geometry(const GlobalFlags& g) {
  return pcr::GridGeometry(1, 1, g.h,
                           g.neighborhood == 4 ? pcr::Neighborhood::N4
                                               : pcr::Neighborhood::N8);
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw pcr::io::ParseError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

struct LoadedInstance {
  pcr::Instance inst;
  pcr::Palette palette{3, {0, 0, 0}};
  bool have_palette = false;
};

// Shared input loading for restore/energy/oracle.
LoadedInstance load_instance(const GlobalFlags& g, const std::string& image_path,
                             const std::string& mask_path,
                             const std::string& grey_path,
                             const std::string& palette_path,
                             const std::string& distortion_path) {
  LoadedInstance li;
  pcr::ColorImage f = pcr::io::read_ppm(image_path, base_geometry(g));
  pcr::DamageMask D = mask_path.empty()
                          ? pcr::DamageMask::empty(f.geometry)
                          : pcr::io::read_mask(mask_path, f.geometry);
  pcr::DistortionTable L =
      distortion_path.empty()
          ? pcr::DistortionTable::identity(f.channels)
          : pcr::io::read_distortion(distortion_path, f.channels);
  pcr::GreyObservation grey =
      grey_path.empty()
          ? pcr::GreyObservation(f.geometry,
                                 [&] {
                                   std::vector<double> v(f.geometry.pixel_count());
                                   for (int p = 0; p < f.geometry.pixel_count(); ++p)
                                     v[p] = pcr::eval_L(L, L.dot_e(f.pixel(p)));
                                   return v;
                                 }())
          : pcr::io::read_grey(grey_path, f.geometry);
  li.inst = pcr::Instance{std::move(f), std::move(D), std::move(grey),
                          std::move(L), pcr::ModelParams(g.lambda, g.mu, g.p)};
  if (!palette_path.empty()) {
    li.palette = pcr::io::read_palette(palette_path, li.inst.f.channels);
    li.have_palette = true;
  }
  return li;
}

int validated_or_exit(const LoadedInstance& li) {
  auto report = pcr::validate_instance(li.inst.f, li.inst.D, li.inst.g,
                                       li.palette, li.inst.params);
  for (const auto& issue : report.issues)
    std::cerr << (issue.fatal ? "error: " : "warning: ") << issue.message << "\n";
  return report.ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise-constant restoration of damaged color images"};
  app.require_subcommand(1);

  // --- restore ---
  GlobalFlags rg;
  std::string r_image, r_mask, r_grey, r_palette, r_distortion;
  std::string r_out_image = "restored.ppm", r_out_labels = "labels.pgm",
              r_out_report = "report.json";
  int r_k = 0;
  int r_sweeps = 20;
  bool r_icm = false;
  auto* restore = app.add_subcommand("restore", "Solve the restoration problem");
  add_global_flags(restore, &rg);
  restore->add_option("--image", r_image, "input PPM")->required();
  restore->add_option("--mask", r_mask, "damage mask PGM (value >= 128 = damaged)");
  restore->add_option("--grey", r_grey, "grey observation PGM (default: from image via table)");
  restore->add_option("--palette", r_palette, "fixed palette file");
  restore->add_option("--distortion", r_distortion, "distortion table CSV");
  restore->add_option("--k", r_k, "free-palette color count (k-means init)");
  restore->add_option("--max-sweeps", r_sweeps, "expansion sweep cap");
  restore->add_flag("--icm", r_icm, "use ICM instead of expansion moves");
  restore->add_option("--out-image", r_out_image, "restored PPM");
  restore->add_option("--out-labels", r_out_labels, "label map PGM");
  restore->add_option("--out-report", r_out_report, "JSON report");

  // --- energy ---
  GlobalFlags eg;
  std::string e_image, e_mask, e_grey, e_palette, e_distortion, e_labels;
  auto* energy = app.add_subcommand("energy", "Evaluate the energy of a labeling");
  add_global_flags(energy, &eg);
  energy->add_option("--image", e_image)->required();
  energy->add_option("--mask", e_mask);
  energy->add_option("--grey", e_grey);
  energy->add_option("--palette", e_palette)->required();
  energy->add_option("--distortion", e_distortion);
  energy->add_option("--labels", e_labels, "label map PGM")->required();

  // --- oracle ---
  GlobalFlags og;
  std::string o_image, o_mask, o_grey, o_palette, o_distortion;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force global minimum (tiny instances)");
  add_global_flags(oracle_cmd, &og);
  oracle_cmd->add_option("--image", o_image)->required();
  oracle_cmd->add_option("--mask", o_mask);
  oracle_cmd->add_option("--grey", o_grey);
  oracle_cmd->add_option("--palette", o_palette)->required();
  oracle_cmd->add_option("--distortion", o_distortion);

  // --- diagnose ---
  GlobalFlags dg;
  std::string d_labels, d_palette, d_out = "regularity.json";
  std::vector<double> d_radii;
  double d_eta = 0.05;
  auto* diagnose = app.add_subcommand("diagnose", "Regularity diagnostics on a labeling");
  add_global_flags(diagnose, &dg);
  diagnose->add_option("--labels", d_labels, "label map PGM")->required();
  diagnose->add_option("--palette", d_palette)->required();
  diagnose->add_option("--radii", d_radii, "ball radii (length units)");
  diagnose->add_option("--eta", d_eta, "elimination threshold");
  diagnose->add_option("--out-report", d_out, "JSON report");

  // --- fit ---
  GlobalFlags fg;
  std::string f_image, f_grey, f_mask, f_out = "distortion.csv";
  int f_bins = 16;
  auto* fit = app.add_subcommand("fit", "Fit e and L from calibration pixels");
  add_global_flags(fit, &fg);
  fit->add_option("--image", f_image)->required();
  fit->add_option("--grey", f_grey, "grey observation over the calibration strip")->required();
  fit->add_option("--mask", f_mask, "optional mask; calibration = undamaged pixels");
  fit->add_option("--bins", f_bins, "equal-count bins");
  fit->add_option("--out", f_out, "output CSV table");

  // --- synth ---
  GlobalFlags sg;
  std::string s_image, s_mask, s_distortion;
  std::string s_out_image = "damaged.ppm", s_out_grey = "grey.pgm";
  double s_noise = 0.0;
  auto* synth = app.add_subcommand("synth", "Synthesize a damaged instance");
  add_global_flags(synth, &sg);
  synth->add_option("--image", s_image, "clean PPM")->required();
  synth->add_option("--mask", s_mask, "damage mask PGM")->required();
  synth->add_option("--distortion", s_distortion, "distortion table CSV");
  synth->add_option("--noise", s_noise, "Gaussian noise sigma");
  synth->add_option("--out-image", s_out_image);
  synth->add_option("--out-grey", s_out_grey);

  // --- check-L ---
  std::string c_distortion;
  auto* check = app.add_subcommand("check-L", "Non-triviality classification of a table");
  check->add_option("--distortion", c_distortion, "distortion table CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (restore->parsed()) {
      auto li = load_instance(rg, r_image, r_mask, r_grey, r_palette, r_distortion);
      if (!li.have_palette && r_k < 1) {
        std::cerr << "error: need --palette or --k\n";
        return 2;
      }
      if (li.have_palette) {
        if (int rc = validated_or_exit(li)) return rc;
      }
      pcr::SolveOptions opts;
      opts.max_sweeps = r_sweeps;
      opts.seed = rg.seed;
      opts.engine = r_icm ? pcr::Engine::ICM : pcr::Engine::Expansion;

      pcr::Palette final_palette = li.palette;
      pcr::Labeling labeling = pcr::Labeling::constant(li.inst.f.geometry, 1);
      json report;
      if (li.have_palette) {
        auto [l, trace] = pcr::solve_fixed_palette(li.inst, li.palette, opts);
        labeling = l;
        report["trace"] = pcr::io::trace_to_json(trace);
      } else {
        auto res = pcr::solve_free_palette(li.inst, r_k, opts);
        final_palette = res.palette;
        labeling = res.labeling;
        report["trace"] = pcr::io::trace_to_json(res.last_trace);
        report["outer_energy"] = res.outer_energy;
        json merges = json::array();
        for (const auto& m : res.merges)
          merges.push_back({{"kept", m.kept}, {"removed", m.removed},
                            {"iteration", m.iteration}});
        report["merges"] = merges;
      }
      if (final_palette.size() > 255) {
        std::cerr << "error: k must be <= 255 for label map output\n";
        return 2;
      }

      // Restored image: palette color at each pixel, clamped to [0,1].
      std::vector<double> out(labeling.label.size() * 3);
      for (size_t p = 0; p < labeling.label.size(); ++p) {
        const double* a = final_palette.color(labeling.label[p]);
        for (int c = 0; c < 3; ++c)
          out[p * 3 + c] = std::clamp(a[c], 0.0, 1.0);
      }
      pcr::io::write_ppm(r_out_image,
                         pcr::ColorImage(li.inst.f.geometry, 3, std::move(out)));
      pcr::io::write_labels(r_out_labels, labeling);

      auto breakdown = pcr::total_energy(labeling, final_palette, li.inst.f,
                                         li.inst.D, li.inst.g, li.inst.L,
                                         li.inst.params);
      report["energy"] = pcr::io::breakdown_to_json(breakdown);
      json pal = json::array();
      for (int i = 1; i <= final_palette.size(); ++i) {
        const double* a = final_palette.color(i);
        pal.push_back(std::vector<double>(a, a + final_palette.channels));
      }
      report["palette"] = pal;
      double h = li.inst.f.geometry.spacing_h;
      report["regularity"] = pcr::io::regularity_to_json(pcr::regularity_report(
          labeling, final_palette, {4 * h, 8 * h, 16 * h}));
      write_json(r_out_report, report);
      return 0;
    }

    if (energy->parsed()) {
      auto li = load_instance(eg, e_image, e_mask, e_grey, e_palette, e_distortion);
      if (int rc = validated_or_exit(li)) return rc;
      auto labeling = pcr::io::read_labels(e_labels, li.inst.f.geometry);
      for (int v : labeling.label)
        if (v > li.palette.size()) {
          std::cerr << "error: label exceeds palette size\n";
          return 2;
        }
      auto b = pcr::total_energy(labeling, li.palette, li.inst.f, li.inst.D,
                                 li.inst.g, li.inst.L, li.inst.params);
      std::cout << pcr::io::breakdown_to_json(b).dump(2) << "\n";
      return 0;
    }

    if (oracle_cmd->parsed()) {
      auto li = load_instance(og, o_image, o_mask, o_grey, o_palette, o_distortion);
      if (int rc = validated_or_exit(li)) return rc;
      double combos = std::pow(static_cast<double>(li.palette.size()),
                               li.inst.f.geometry.pixel_count());
      if (combos > 1e7) {
        std::cerr << "error: instance too large for exhaustive enumeration\n";
        return 2;
      }
      auto [labeling, best] = pcr::oracle::brute_force_fixed_palette(li.inst, li.palette);
      json j;
      j["energy"] = best;
      j["labels"] = labeling.label;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (diagnose->parsed()) {
      pcr::Palette A = pcr::io::read_palette(d_palette, 3);
      // Label map geometry comes from the file itself.
      int w, h;
      auto raw = pcr::io::read_pgm(d_labels, &w, &h);
      pcr::GridGeometry geom(w, h, dg.h,
                             dg.neighborhood == 4 ? pcr::Neighborhood::N4
                                                  : pcr::Neighborhood::N8);
      std::vector<int> labels(raw.size());
      for (size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] < 1 || raw[i] > A.size()) {
          std::cerr << "error: label out of palette range\n";
          return 2;
        }
        labels[i] = raw[i];
      }
      pcr::Labeling l(geom, std::move(labels));
      if (d_radii.empty())
        d_radii = {4 * dg.h, 8 * dg.h, 16 * dg.h};
      auto rep = pcr::regularity_report(l, A, d_radii, d_eta);
      write_json(d_out, pcr::io::regularity_to_json(rep));
      std::cout << pcr::io::regularity_to_json(rep).dump(2) << "\n";
      return 0;
    }

    if (fit->parsed()) {
      pcr::ColorImage f = pcr::io::read_ppm(f_image, base_geometry(fg));
      pcr::GreyObservation g = pcr::io::read_grey(f_grey, f.geometry);
      std::vector<int> calibration;
      if (!f_mask.empty()) {
        pcr::DamageMask D = pcr::io::read_mask(f_mask, f.geometry);
        for (int p = 0; p < f.geometry.pixel_count(); ++p)
          if (!D.damaged[p]) calibration.push_back(p);
      } else {
        for (int p = 0; p < f.geometry.pixel_count(); ++p) calibration.push_back(p);
      }
      if (calibration.size() < 2) {
        std::cerr << "error: need at least 2 calibration pixels\n";
        return 2;
      }
      auto res = pcr::fit_distortion(f, g, calibration, f_bins);
      for (const auto& wmsg : res.warnings) std::cerr << "warning: " << wmsg << "\n";
      pcr::io::write_distortion(f_out, res.table);
      return 0;
    }

    if (synth->parsed()) {
      pcr::ColorImage clean = pcr::io::read_ppm(s_image, base_geometry(sg));
      pcr::DamageMask D = pcr::io::read_mask(s_mask, clean.geometry);
      pcr::DistortionTable tab =
          s_distortion.empty() ? pcr::DistortionTable::identity(clean.channels)
                               : pcr::io::read_distortion(s_distortion, clean.channels);
      auto [f, g] = pcr::synthesize_instance(clean, D, tab, s_noise, sg.seed);
      pcr::io::write_ppm(s_out_image, f);
      if (D.damaged_count() > 0) pcr::io::write_grey(s_out_grey, g);
      return 0;
    }

    if (check->parsed()) {
      pcr::DistortionTable tab = pcr::io::read_distortion(c_distortion, 3);
      auto res = pcr::nontriviality_check(tab);
      const char* verdict = res.verdict == pcr::Triviality::Nontrivial ? "Nontrivial"
                            : res.verdict == pcr::Triviality::Trivial  ? "Trivial"
                                                                       : "Inconclusive";
      json j{{"verdict", verdict}, {"gamma_hat", res.gamma_hat}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const pcr::io::ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
