#ifndef MWEC_MWEC_H_
#define MWEC_MWEC_H_

/*
 * C interface to the multi-winner election control library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * fallible call returns an mwec_status; on failure the message is available
 * from mwec_last_error() on the calling thread until the next call. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with mwec_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(MWEC_BUILDING_LIBRARY)
#define MWEC_API __attribute__((visibility("default")))
#else
#define MWEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mwec_status {
  MWEC_OK = 0,
  MWEC_ERR_PARSE = 1,
  MWEC_ERR_INVALID_ARGUMENT = 2,
  MWEC_ERR_LIMIT_EXCEEDED = 3,
  MWEC_ERR_IO = 4,
  MWEC_ERR_INTERNAL = 5
} mwec_status;

typedef struct mwec_graph mwec_graph;
typedef struct mwec_instance mwec_instance;

typedef struct mwec_estimator {
  int exact;               /* nonzero: exact live-edge enumeration */
  size_t samples;          /* Monte Carlo sample count */
  uint64_t rng_seed;       /* Monte Carlo master seed */
  size_t max_enum_edges;   /* exact mode: stochastic edge limit */
  size_t threads;          /* Monte Carlo workers; never changes results */
} mwec_estimator;

typedef struct mwec_work_limits {
  size_t max_nodes;
  size_t max_budget;
  size_t max_edges;
} mwec_work_limits;

typedef struct mwec_random_options {
  size_t n;
  size_t t;
  size_t k;
  double edge_prob;
  const char* activation_prob; /* decimal text, e.g. "0.5"; NULL means 1 */
  int random_activation;       /* nonzero: each edge draws p from {0.1..0.9} */
  const char* scoring;         /* election-file scoring payload, e.g. "borda" */
  uint64_t rng_seed;
} mwec_random_options;

MWEC_API const char* mwec_version(void);
MWEC_API const char* mwec_last_error(void);
MWEC_API const char* mwec_status_name(mwec_status status);
MWEC_API void mwec_string_free(char* s);

MWEC_API void mwec_estimator_init(mwec_estimator* cfg);
MWEC_API void mwec_work_limits_init(mwec_work_limits* limits);
MWEC_API void mwec_random_options_init(mwec_random_options* opts);

/* Graphs */
MWEC_API mwec_status mwec_graph_parse(const char* text, mwec_graph** out);
MWEC_API mwec_status mwec_graph_load(const char* path, mwec_graph** out);
MWEC_API void mwec_graph_free(mwec_graph* g);
MWEC_API size_t mwec_graph_node_count(const mwec_graph* g);
MWEC_API size_t mwec_graph_edge_count(const mwec_graph* g);
MWEC_API mwec_status mwec_graph_serialize(const mwec_graph* g, char** out);

/* Election instances (a graph bound to an election file) */
MWEC_API mwec_status mwec_instance_parse(const mwec_graph* g,
                                         const char* election_text,
                                         mwec_instance** out);
MWEC_API mwec_status mwec_instance_load(const char* graph_path,
                                        const char* election_path,
                                        mwec_instance** out);
MWEC_API void mwec_instance_free(mwec_instance* inst);
MWEC_API const mwec_graph* mwec_instance_graph(const mwec_instance* inst);
MWEC_API mwec_status mwec_instance_serialize(const mwec_instance* inst,
                                             char** graph_text,
                                             char** election_text);
MWEC_API mwec_status mwec_instance_write(const mwec_instance* inst,
                                         const char* graph_path,
                                         const char* election_path);

/* Diffusion. Results are JSON objects. */
MWEC_API mwec_status mwec_activation_probabilities(const mwec_graph* g,
                                                   const uint32_t* seeds,
                                                   size_t seed_count,
                                                   const mwec_estimator* cfg,
                                                   char** json);
/* One cascade realization drawn from the stream (rng_seed, sample_index). */
MWEC_API mwec_status mwec_simulate(const mwec_graph* g, const uint32_t* seeds,
                                   size_t seed_count, uint64_t rng_seed,
                                   uint64_t sample_index, char** json);

/* Objectives: "mov-c", "mov-d", "dow-c", "dow-d", "spv-mov-c", "spv-mov-d",
 * "spv-dov-c", "spv-dov-d". */
MWEC_API mwec_status mwec_evaluate(const mwec_instance* inst,
                                   const char* objective,
                                   const uint32_t* seeds, size_t seed_count,
                                   const mwec_estimator* cfg, char** json);

/* Greedy on node-weighted spread for the objective's direction, followed by
 * the objective report for the chosen seeds. */
MWEC_API mwec_status mwec_greedy(const mwec_instance* inst,
                                 const char* objective, size_t budget,
                                 int lazy, const mwec_estimator* cfg,
                                 char** json);

MWEC_API mwec_status mwec_oracle(const mwec_instance* inst,
                                 const char* objective, size_t budget,
                                 const mwec_work_limits* limits, char** json);

/* kind: "cmec-exceptional", "cmec-general", "intuition", "spv".
 * base is ignored for "intuition"; t and k are used by "spv" only;
 * half_size by "intuition" only. info receives a JSON description. */
MWEC_API mwec_status mwec_gen_reduction(const char* kind,
                                        const mwec_graph* base,
                                        const char* scoring, size_t t,
                                        size_t k, size_t half_size,
                                        mwec_instance** out, char** info);

MWEC_API mwec_status mwec_gen_random(const mwec_random_options* opts,
                                     mwec_instance** out);

#ifdef __cplusplus
}
#endif

#endif  // MWEC_MWEC_H_
