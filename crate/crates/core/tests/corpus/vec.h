#ifndef VEC_H
#define VEC_H

#include <stddef.h>

typedef struct {
    double x, y, z;
} vec3;

vec3 vec3_add(vec3 a, vec3 b);
vec3 vec3_scale(vec3 v, double k);
double vec3_dot(vec3 a, vec3 b);

static inline double vec3_len2(vec3 v) { return vec3_dot(v, v); }

#endif /* VEC_H */
