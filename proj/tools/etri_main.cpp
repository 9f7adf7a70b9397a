#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "etri/etri.h"

namespace {

struct SurfaceHandle {
  etri_surface* p = nullptr;
  ~SurfaceHandle() { etri_surface_free(p); }
};

struct MeshHandle {
  etri_mesh* p = nullptr;
  ~MeshHandle() { etri_mesh_free(p); }
};

struct Text {
  char* p = nullptr;
  ~Text() { etri_string_free(p); }
};

int exitOf(etri_status status) {
  switch (status) {
    case ETRI_OK: return 0;
    case ETRI_INVARIANT: return 1;
    case ETRI_PARSE: return 2;
    case ETRI_NUMERIC: return 3;
    case ETRI_ARGUMENT: return 1;
    case ETRI_IO: return 2;
  }
  return 3;
}

int report(etri_status status) {
  if (status != ETRI_OK) std::fprintf(stderr, "etri: %s\n", etri_last_error());
  return exitOf(status);
}

// Empty path prints to stdout.
int emit(const std::string& path, const char* text) {
  if (!text) return 0;
  if (path.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::fprintf(stderr, "etri: cannot write %s\n", path.c_str());
    return exitOf(ETRI_IO);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilateral triangulations of planar domains and surfaces"};
  app.require_subcommand(1);
  long long seed = 0;
  app.add_option("--seed", seed,
                 "seed for randomised sampling (all current subcommands "
                 "sample deterministically)")
      ->default_val(0);

  std::function<int()> action;

  {
    auto* cmd = app.add_subcommand("validate", "check a surface or mesh file");
    auto surfacePath = std::make_shared<std::string>();
    auto meshPath = std::make_shared<std::string>();
    auto* s = cmd->add_option("--surface", *surfacePath, "ETRI surface file");
    auto* m = cmd->add_option("--mesh", *meshPath, "TRIMESH planar mesh file");
    s->excludes(m);
    cmd->callback([=, &action] {
      action = [=]() -> int {
        if (!surfacePath->empty()) {
          SurfaceHandle surface;
          etri_status status = etri_surface_read(surfacePath->c_str(), &surface.p);
          if (status != ETRI_OK) return report(status);
          Text text;
          if ((status = etri_surface_describe(surface.p, &text.p)) != ETRI_OK)
            return report(status);
          return emit("", text.p);
        }
        if (meshPath->empty()) {
          std::fprintf(stderr, "etri: validate needs --surface or --mesh\n");
          return exitOf(ETRI_ARGUMENT);
        }
        MeshHandle mesh;
        etri_status status = etri_mesh_read(meshPath->c_str(), &mesh.p);
        if (status != ETRI_OK) return report(status);
        Text text;
        if ((status = etri_mesh_describe(mesh.p, &text.p)) != ETRI_OK)
          return report(status);
        emit("", text.p);
        return report(etri_mesh_validate(mesh.p));
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("subdivide", "barycentric subdivision with "
                                                "its canonical colouring");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--surface", *in, "input ETRI file")->required();
    cmd->add_option("--out", *out, "output ETRI file")->required();
    cmd->callback([=, &action] {
      action = [=]() -> int {
        SurfaceHandle surface, result;
        etri_status status = etri_surface_read(in->c_str(), &surface.p);
        if (status != ETRI_OK) return report(status);
        if ((status = etri_surface_subdivide(surface.p, &result.p)) != ETRI_OK)
          return report(status);
        return report(etri_surface_write(result.p, out->c_str()));
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("colour", "attach a proper three-colouring");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--surface", *in, "input ETRI file")->required();
    cmd->add_option("--out", *out, "output ETRI file")->required();
    cmd->callback([=, &action] {
      action = [=]() -> int {
        SurfaceHandle surface, result;
        etri_status status = etri_surface_read(in->c_str(), &surface.p);
        if (status != ETRI_OK) return report(status);
        if ((status = etri_surface_colour(surface.p, &result.p)) != ETRI_OK)
          return report(status);
        return report(etri_surface_write(result.p, out->c_str()));
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("fan-subdivide",
                                   "fan boundary faces to raise boundary "
                                   "vertex degrees above the interior");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto degree = std::make_shared<int>(3);
    cmd->add_option("--surface", *in, "input ETRI file")->required();
    cmd->add_option("--degree", *degree, "interior degree bound")->required();
    cmd->add_option("--out", *out, "output ETRI file")->required();
    cmd->callback([=, &action] {
      action = [=]() -> int {
        SurfaceHandle surface, result;
        etri_status status = etri_surface_read(in->c_str(), &surface.p);
        if (status != ETRI_OK) return report(status);
        status = etri_surface_fan_subdivide(surface.p, *degree, &result.p);
        if (status != ETRI_OK) return report(status);
        return report(etri_surface_write(result.p, out->c_str()));
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("rect-tri", "bounded-geometry triangulation "
                                               "of a partitioned rectangle");
    auto width = std::make_shared<double>(0);
    auto height = std::make_shared<double>(0);
    auto partition = std::make_shared<std::string>();
    auto lambda = std::make_shared<double>(2.0);
    auto svgPath = std::make_shared<std::string>();
    auto meshPath = std::make_shared<std::string>();
    cmd->add_option("--width", *width, "rectangle width")->required();
    cmd->add_option("--height", *height, "rectangle height")->required();
    cmd->add_option("--partition", *partition, "S0..S3 side partition file")
        ->required();
    cmd->add_option("--lambda", *lambda, "adjacent-gap ratio bound");
    cmd->add_option("--svg", *svgPath, "write an SVG rendering");
    cmd->add_option("--mesh", *meshPath, "write the TRIMESH output");
    cmd->callback([=, &action] {
      action = [=]() -> int {
        MeshHandle mesh;
        Text text;
        etri_status status = etri_rect_triangulate(
            *width, *height, partition->c_str(), *lambda, &mesh.p, &text.p);
        if (status != ETRI_OK) return report(status);
        emit("", text.p);
        if (!meshPath->empty() &&
            (status = etri_mesh_write(mesh.p, meshPath->c_str())) != ETRI_OK)
          return report(status);
        if (!svgPath->empty()) {
          Text svg;
          if ((status = etri_mesh_render(mesh.p, "plain", 640, &svg.p)) != ETRI_OK)
            return report(status);
          return emit(*svgPath, svg.p);
        }
        return 0;
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("hemmed", "lattice-plus-collar triangulation "
                                             "of a hemmed domain");
    auto spec = std::make_shared<std::string>();
    auto outMesh = std::make_shared<std::string>();
    auto outSurface = std::make_shared<std::string>();
    auto reportPath = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec, "JSON domain spec")->required();
    cmd->add_option("--out-mesh", *outMesh, "write the planar TRIMESH");
    cmd->add_option("--out-surface", *outSurface, "write the glued ETRI surface");
    cmd->add_option("--report", *reportPath, "write the report (stdout if absent)");
    cmd->callback([=, &action] {
      action = [=]() -> int {
        Text text;
        etri_status status = etri_hemmed_assemble(
            spec->c_str(), outMesh->empty() ? nullptr : outMesh->c_str(),
            outSurface->empty() ? nullptr : outSurface->c_str(), &text.p);
        if (status != ETRI_OK) return report(status);
        return emit(*reportPath, text.p);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("chain", "assemble and glue a chain of "
                                            "hemmed pieces");
    auto spec = std::make_shared<std::string>();
    auto outSurface = std::make_shared<std::string>();
    auto reportPath = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec, "JSON chain spec")->required();
    cmd->add_option("--out-surface", *outSurface, "write the glued ETRI surface");
    cmd->add_option("--report", *reportPath, "write the report (stdout if absent)");
    cmd->callback([=, &action] {
      action = [=]() -> int {
        Text text;
        etri_status status = etri_chain_assemble(
            spec->c_str(), outSurface->empty() ? nullptr : outSurface->c_str(),
            &text.p);
        if (status != ETRI_OK) return report(status);
        return emit(*reportPath, text.p);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("belyi-eval", "evaluate the Belyi function "
                                                 "at a barycentric point");
    auto surfacePath = std::make_shared<std::string>();
    auto face = std::make_shared<int>(0);
    auto bary = std::make_shared<std::string>();
    cmd->add_option("--surface", *surfacePath, "coloured ETRI file")->required();
    cmd->add_option("--face", *face, "face index")->required();
    cmd->add_option("--bary", *bary, "barycentric coordinates a,b,c")->required();
    cmd->callback([=, &action] {
      action = [=]() -> int {
        double b0, b1, b2;
        if (std::sscanf(bary->c_str(), "%lf,%lf,%lf", &b0, &b1, &b2) != 3) {
          std::fprintf(stderr, "etri: --bary expects three numbers a,b,c\n");
          return exitOf(ETRI_ARGUMENT);
        }
        SurfaceHandle surface;
        etri_status status = etri_surface_read(surfacePath->c_str(), &surface.p);
        if (status != ETRI_OK) return report(status);
        double re = 0, im = 0;
        status = etri_belyi_eval(surface.p, *face, b0, b1, b2, &re, &im);
        if (status != ETRI_OK) return report(status);
        if (std::isinf(re))
          std::printf("value: inf\n");
        else
          std::printf("value: %.17g %+.17gi\n", re, im);
        return 0;
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("belyi-verify", "check the Belyi function "
                                                   "is a branched cover");
    auto surfacePath = std::make_shared<std::string>();
    auto samples = std::make_shared<int>(4);
    cmd->add_option("--surface", *surfacePath, "coloured ETRI file")->required();
    cmd->add_option("--samples", *samples, "samples per glued edge");
    cmd->callback([=, &action] {
      action = [=]() -> int {
        SurfaceHandle surface;
        etri_status status = etri_surface_read(surfacePath->c_str(), &surface.p);
        if (status != ETRI_OK) return report(status);
        Text text;
        int pass = 0;
        status = etri_belyi_verify(surface.p, *samples, &text.p, &pass);
        if (status != ETRI_OK) return report(status);
        emit("", text.p);
        return pass ? 0 : exitOf(ETRI_INVARIANT);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("dilatation", "dilatation of the piecewise-"
                                                 "affine map between two meshes");
    auto source = std::make_shared<std::string>();
    auto target = std::make_shared<std::string>();
    cmd->add_option("--source", *source, "source TRIMESH file")->required();
    cmd->add_option("--target", *target, "target TRIMESH file")->required();
    cmd->callback([=, &action] {
      action = [=]() -> int {
        Text text;
        etri_status status =
            etri_map_dilatation(source->c_str(), target->c_str(), &text.p);
        if (status != ETRI_OK) return report(status);
        return emit("", text.p);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("atlas", "generate a worked example surface");
    auto kind = std::make_shared<std::string>();
    auto n = std::make_shared<int>(7);
    auto depth = std::make_shared<int>(2);
    auto out = std::make_shared<std::string>();
    auto svgPath = std::make_shared<std::string>();
    cmd->add_option("kind", *kind, "lattice | cylinder | hyperbolic | npsphere")
        ->required();
    cmd->add_option("--n", *n, "extent, columns, vertex degree, or covering "
                               "degree, by kind");
    cmd->add_option("--depth", *depth, "rows or growth depth");
    cmd->add_option("--out", *out, "write the ETRI surface");
    cmd->add_option("--svg", *svgPath, "write an SVG of the planar layout");
    cmd->callback([=, &action] {
      action = [=]() -> int {
        SurfaceHandle surface;
        MeshHandle mesh;
        Text text;
        etri_status status = etri_atlas_generate(kind->c_str(), *n, *depth,
                                                 &surface.p, &mesh.p, &text.p);
        if (status != ETRI_OK) return report(status);
        emit("", text.p);
        if (!out->empty() &&
            (status = etri_surface_write(surface.p, out->c_str())) != ETRI_OK)
          return report(status);
        if (!svgPath->empty()) {
          if (!mesh.p) {
            std::fprintf(stderr, "etri: %s has no planar layout to render\n",
                         kind->c_str());
            return exitOf(ETRI_ARGUMENT);
          }
          Text svg;
          if ((status = etri_mesh_render(mesh.p, "plain", 640, &svg.p)) != ETRI_OK)
            return report(status);
          return emit(*svgPath, svg.p);
        }
        return 0;
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("render", "render a planar mesh to SVG");
    auto meshPath = std::make_shared<std::string>();
    auto svgPath = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("plain");
    auto width = std::make_shared<double>(640);
    cmd->add_option("--mesh", *meshPath, "TRIMESH file")->required();
    cmd->add_option("--svg", *svgPath, "output file (stdout if absent)");
    cmd->add_option("--mode", *mode, "plain | colour | angles");
    cmd->add_option("--width", *width, "pixel width");
    cmd->callback([=, &action] {
      action = [=]() -> int {
        MeshHandle mesh;
        etri_status status = etri_mesh_read(meshPath->c_str(), &mesh.p);
        if (status != ETRI_OK) return report(status);
        Text svg;
        status = etri_mesh_render(mesh.p, mode->c_str(), *width, &svg.p);
        if (status != ETRI_OK) return report(status);
        return emit(*svgPath, svg.p);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exitOf(ETRI_ARGUMENT);
  }
  return action ? action() : exitOf(ETRI_ARGUMENT);
}
