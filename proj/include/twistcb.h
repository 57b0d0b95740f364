#ifndef TWISTCB_H
#define TWISTCB_H

/* C interface to the twistcb engine.  All operations take a JSON
 * configuration string and hand back a JSON result string; results are
 * byte-deterministic for identical input.  Returned strings are owned by
 * the caller and must be released with twistcb_free_string. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct twistcb_ctx twistcb_ctx;

#define TWISTCB_OK 0
#define TWISTCB_FAIL 1   /* a check suite ran and failed */
#define TWISTCB_EINVAL 2 /* bad configuration */

twistcb_ctx* twistcb_ctx_new(void);
void twistcb_ctx_free(twistcb_ctx* ctx);

/* message for the last failing call on this context; empty string if none */
const char* twistcb_last_error(const twistcb_ctx* ctx);

/* level-bounded dominant weights with dimensions, and their orbit partition
 * when an automorphism is configured.
 * config: {"algebra":"A1","level":1,"rho":"trivial"|"outer"?} */
int twistcb_weights(twistcb_ctx* ctx, const char* config_json, char** out);

/* rank of the space of conformal blocks attached to a covering graph.
 * config: {"algebra","level","depth","graph":{...},"labels":{leg:{"weight":
 * [..],"triv":0}},"rho"?}; result {"rank","stabilized","depth","method"} */
int twistcb_rank(twistcb_ctx* ctx, const char* config_json, char** out);

/* identity-check suites: virasoro | sewing | torsor | propagation.
 * config: {"suite":"virasoro","algebra"?,"level"?,"depth"?,"kmax"?} */
int twistcb_check(twistcb_ctx* ctx, const char* config_json, char** out);

void twistcb_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif
