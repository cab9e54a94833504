// Copyright 2026 The toric-bell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bell/weyl.hpp"

#include <sstream>
#include <stdexcept>

namespace bell {

namespace {

int mod(long long a, int m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

void require_compatible(const WeylWord& a, const WeylWord& b) {
    if (a.d != b.d) {
        throw std::invalid_argument("WeylWord dimension mismatch");
    }
    if (a.num_sites() != b.num_sites()) {
        throw std::invalid_argument("WeylWord length mismatch");
    }
}

}  // namespace

WeylWord WeylWord::identity(int num_sites, int d) {
    WeylWord w;
    w.d = d;
    w.phase = 0;
    w.x.assign(num_sites, 0);
    w.z.assign(num_sites, 0);
    return w;
}

WeylWord WeylWord::single(int num_sites, int d, int site, int x_exp, int z_exp, int phase_exp) {
    WeylWord w = identity(num_sites, d);
    w.x[site] = mod(x_exp, d);
    w.z[site] = mod(z_exp, d);
    w.phase = mod(phase_exp, d);
    return w;
}

WeylWord WeylWord::displacement(int num_sites, int d, int site, int a, int b) {
    int aa = mod(a, d);
    int bb = mod(b, d);
    long long tau = static_cast<long long>((d + 1) / 2) * aa * bb;
    return single(num_sites, d, site, aa, bb, mod(tau, d));
}

bool WeylWord::is_identity() const {
    if (phase != 0) {
        return false;
    }
    for (int s = 0; s < num_sites(); ++s) {
        if (x[s] != 0 || z[s] != 0) {
            return false;
        }
    }
    return true;
}

std::string WeylWord::str() const {
    std::ostringstream out;
    out << "w^" << phase;
    bool trivial = true;
    for (int s = 0; s < num_sites(); ++s) {
        if (x[s] == 0 && z[s] == 0) {
            continue;
        }
        trivial = false;
        out << " ·";
        if (x[s] != 0) {
            out << " X_" << s << "^" << x[s];
        }
        if (z[s] != 0) {
            out << " Z_" << s << "^" << z[s];
        }
    }
    if (trivial) {
        out << " · I";
    }
    return out.str();
}

WeylWord multiply(const WeylWord& a, const WeylWord& b) {
    require_compatible(a, b);
    WeylWord out = WeylWord::identity(a.num_sites(), a.d);
    long long phase = a.phase + b.phase;
    for (int s = 0; s < a.num_sites(); ++s) {
        out.x[s] = mod(a.x[s] + b.x[s], a.d);
        out.z[s] = mod(a.z[s] + b.z[s], a.d);
        phase += static_cast<long long>(a.z[s]) * b.x[s];
    }
    out.phase = mod(phase, a.d);
    return out;
}

WeylWord dagger(const WeylWord& w) {
    WeylWord out = WeylWord::identity(w.num_sites(), w.d);
    long long phase = -w.phase;
    for (int s = 0; s < w.num_sites(); ++s) {
        out.x[s] = mod(-w.x[s], w.d);
        out.z[s] = mod(-w.z[s], w.d);
        phase += static_cast<long long>(w.x[s]) * w.z[s];
    }
    out.phase = mod(phase, w.d);
    return out;
}

WeylWord power(const WeylWord& w, long long n) {
    // w^d is the identity word for odd d, so reduce the exponent first.
    long long nn = mod(n, w.d);
    WeylWord out = WeylWord::identity(w.num_sites(), w.d);
    long long cross = 0;
    for (int s = 0; s < w.num_sites(); ++s) {
        out.x[s] = mod(nn * w.x[s], w.d);
        out.z[s] = mod(nn * w.z[s], w.d);
        cross += static_cast<long long>(w.x[s]) * w.z[s];
    }
    out.phase = mod(nn * w.phase + (nn * (nn - 1) / 2) % w.d * cross, w.d);
    return out;
}

int commutation_phase(const WeylWord& a, const WeylWord& b) {
    require_compatible(a, b);
    long long c = 0;
    for (int s = 0; s < a.num_sites(); ++s) {
        c += static_cast<long long>(a.z[s]) * b.x[s] - static_cast<long long>(a.x[s]) * b.z[s];
    }
    return mod(c, a.d);
}

}  // namespace bell
