/* C interface to the etri library. All functions return an etri_status;
 * every other output goes through out-parameters. Handles are opaque and
 * freed with their matching _free function. Strings returned through char**
 * are heap-allocated and released with etri_string_free. On failure the
 * out-parameters are left untouched and etri_last_error() carries a
 * human-readable message for the calling thread. */
#ifndef ETRI_H
#define ETRI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  ETRI_OK = 0,
  ETRI_INVARIANT = 1, /* a validated structural property failed */
  ETRI_PARSE = 2,     /* malformed input file */
  ETRI_NUMERIC = 3,   /* an iteration or tolerance failed */
  ETRI_ARGUMENT = 4,  /* bad parameter value */
  ETRI_IO = 5         /* file system trouble */
} etri_status;

typedef struct etri_surface etri_surface; /* glued surface + optional colouring */
typedef struct etri_mesh etri_mesh;       /* planar triangle mesh */

/* Message of the most recent failure on this thread; empty after success. */
const char* etri_last_error(void);

void etri_string_free(char* s);
void etri_surface_free(etri_surface* s);
void etri_mesh_free(etri_mesh* m);

/* ---- surfaces (.etri files) ---- */
etri_status etri_surface_read(const char* path, etri_surface** out);
etri_status etri_surface_write(const etri_surface* s, const char* path);
/* Multi-line summary: counts, Euler characteristic, genus, boundary,
 * degree range, colouring state. Reading already validates, so a handle
 * always describes a structurally sound surface. */
etri_status etri_surface_describe(const etri_surface* s, char** text);
/* Barycentric subdivision; the result carries its canonical colouring. */
etri_status etri_surface_subdivide(const etri_surface* s, etri_surface** out);
/* Attach a proper three-colouring, or fail with NotThreeColourable. */
etri_status etri_surface_colour(const etri_surface* s, etri_surface** out);
/* Fan-subdivide boundary faces for the given interior degree bound. */
etri_status etri_surface_fan_subdivide(const etri_surface* s, int degree,
                                       etri_surface** out);

/* ---- planar meshes (.tri files) ---- */
etri_status etri_mesh_read(const char* path, etri_mesh** out);
etri_status etri_mesh_write(const etri_mesh* m, const char* path);
/* Counts, area, minimum angle, and any validation findings. Describing an
 * invalid mesh still succeeds; use etri_mesh_validate to act on validity. */
etri_status etri_mesh_describe(const etri_mesh* m, char** text);
/* ETRI_OK for a structurally valid planar mesh, otherwise ETRI_INVARIANT
 * with the first violation as the error message. */
etri_status etri_mesh_validate(const etri_mesh* m);
/* mode: "plain", "colour" (canonical three-colouring of the mesh), or
 * "angles" (per-face minimum-angle heatmap). */
etri_status etri_mesh_render(const etri_mesh* m, const char* mode,
                             double width, char** svg);

/* ---- bounded-geometry rectangle triangulation ---- */
/* partition_path: S0..S3 side partition file. */
etri_status etri_rect_triangulate(double width, double height,
                                  const char* partition_path, double lambda,
                                  etri_mesh** out, char** report);

/* ---- hemmed domain pipeline ---- */
/* spec_path: JSON domain spec. Null output paths skip that file. */
etri_status etri_hemmed_assemble(const char* spec_path, const char* mesh_path,
                                 const char* surface_path, char** report);
etri_status etri_chain_assemble(const char* spec_path,
                                const char* surface_path, char** report);
/* Dilatation of the piecewise-affine map between two meshes with identical
 * face lists. */
etri_status etri_map_dilatation(const char* source_mesh_path,
                                const char* target_mesh_path, char** report);

/* ---- Belyi evaluation ---- */
/* Uses the surface's colouring, or its canonical three-colouring when none
 * is attached. A pole reports re = inf. */
etri_status etri_belyi_eval(const etri_surface* s, int face, double b0,
                            double b1, double b2, double* re, double* im);
/* pass (may be null) gets 1 when all residual checks meet tolerance. */
etri_status etri_belyi_verify(const etri_surface* s, int samples_per_edge,
                              char** report, int* pass);

/* ---- example atlases ---- */
/* kind: "lattice" (n = hex extent), "cylinder" (n columns, depth rows),
 * "hyperbolic" (vertex degree n, growth depth), "npsphere" (covering degree
 * n). mesh receives a planar layout for lattice and hyperbolic, null
 * otherwise; surface or mesh may be null to skip. */
etri_status etri_atlas_generate(const char* kind, int n, int depth,
                                etri_surface** surface, etri_mesh** mesh,
                                char** report);

#ifdef __cplusplus
}
#endif

#endif /* ETRI_H */
