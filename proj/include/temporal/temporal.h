/* C interface to the temporal relation bootstrapping engine.
 *
 * A session wraps one run directory plus one configuration file. Stages are
 * executed by name and communicate through plain TSV/JSON artifacts in the
 * run directory, so each stage is independently inspectable and re-runnable.
 *
 * All functions return a status code (except the accessors returning
 * strings). Handles are opaque; every handle obtained from te_session_open
 * must be released with te_session_close.
 */

#ifndef TEMPORAL_TEMPORAL_H
#define TEMPORAL_TEMPORAL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes. */
enum {
  TE_OK = 0,
  TE_ERR_USAGE = 1,   /* bad arguments, bad config, unknown stage */
  TE_ERR_DATA = 2,    /* unreadable/malformed input, missing artifact */
  TE_ERR_NUMERIC = 3  /* non-finite values during training */
};

typedef struct te_session te_session;

/* Opens a session for config_path writing into run_dir. Returns NULL when
 * the config cannot be parsed; call te_last_open_error() for the reason. */
te_session* te_session_open(const char* config_path, const char* run_dir);

/* Message for the most recent failed te_session_open on this thread. */
const char* te_last_open_error(void);

/* Overrides the RNG seed / worker thread count from the config file. */
int te_session_set_seed(te_session* s, uint64_t seed);
int te_session_set_threads(te_session* s, int threads);

/* Runs one pipeline stage: mine-lexicon, extract-events, mine-pairs, seeds,
 * build-instances, train, bootstrap, predict, score, sample, export-graph. */
int te_session_run(te_session* s, const char* stage);

/* Message for the most recent failed call on this session. */
const char* te_session_error(const te_session* s);

void te_session_close(te_session* s);

/* NULL-terminated array of stage names, in pipeline order. */
const char* const* te_stage_names(void);

const char* te_version(void);

#ifdef __cplusplus
}
#endif

#endif /* TEMPORAL_TEMPORAL_H */
