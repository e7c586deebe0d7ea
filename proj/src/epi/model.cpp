/*
* Copyright (C) 2026 ESID contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "esid/epi/model.h"
#include "esid/utils/error.h"

#include <cmath>
#include <string>

namespace esid
{

ContactMatrix effective_contacts(const ContactMatrices& base, std::span<const Damping> dampings, int day)
{
    const std::size_t n = base.num_groups();
    ContactMatrix result(n);
    for (auto loc : kAllLocations) {
        const auto& m = base[loc];
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                double factor = 1.0;
                for (const auto& d : dampings) {
                    if (d.active_on(day) && d.applies_to(loc) && d.applies_to(a, b)) {
                        factor *= 1.0 - d.strength;
                    }
                }
                result(a, b) += m(a, b) * factor;
            }
        }
    }
    return result;
}

std::vector<double> force_of_infection(const CompartmentTensor& state, const EpiParameters& params,
                                       const ContactMatrix& contacts)
{
    const std::size_t n = state.num_groups();
    std::vector<double> pressure(n, 0.0); // infectious fraction of each group
    std::vector<bool> empty(n, false);
    for (std::size_t b = 0; b < n; ++b) {
        double living = state.group_living(b);
        if (living > 0) {
            pressure[b] = (state(b, Compartment::Carrier) +
                           params[b].symptomatic_infectiousness * state(b, Compartment::Infected)) /
                          living;
        }
        else {
            empty[b] = true;
        }
    }
    std::vector<double> lambda(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        double sum = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            if (contacts(a, b) > 0 && empty[b]) {
                throw ValidationError("force of infection: living population of group " + std::to_string(b) +
                                      " is zero but group " + std::to_string(a) + " has contacts with it");
            }
            sum += contacts(a, b) * pressure[b];
        }
        lambda[a] = params[a].transmission_probability * sum;
    }
    return lambda;
}

CompartmentTensor rhs(const CompartmentTensor& state, const EpiParameters& params, const ContactMatrix& contacts)
{
    auto lambda = force_of_infection(state, params, contacts);
    CompartmentTensor d(state.num_groups());
    for (std::size_t g = 0; g < state.num_groups(); ++g) {
        const auto& p = params[g];
        double infection   = lambda[g] * state(g, Compartment::Susceptible);
        double out_exposed = state(g, Compartment::Exposed) / p.latent_days;
        double out_carrier = state(g, Compartment::Carrier) / p.nonsymptomatic_days;
        double out_infect  = state(g, Compartment::Infected) / p.symptomatic_days;
        double out_severe  = state(g, Compartment::Severe) / p.severe_days;
        double out_crit    = state(g, Compartment::Critical) / p.critical_days;

        d(g, Compartment::Susceptible) = -infection;
        d(g, Compartment::Exposed)     = infection - out_exposed;
        d(g, Compartment::Carrier)     = out_exposed - out_carrier;
        d(g, Compartment::Infected)    = p.symptomatic_fraction * out_carrier - out_infect;
        d(g, Compartment::Severe)      = p.severe_fraction * out_infect - out_severe;
        d(g, Compartment::Critical)    = p.critical_fraction * out_severe - out_crit;
        d(g, Compartment::Dead)        = p.death_fraction * out_crit;
        d(g, Compartment::Recovered)   = (1 - p.symptomatic_fraction) * out_carrier +
                                       (1 - p.severe_fraction) * out_infect + (1 - p.critical_fraction) * out_severe +
                                       (1 - p.death_fraction) * out_crit;
    }
    return d;
}

namespace
{

void check_derivative(const CompartmentTensor& d, double t)
{
    for (std::size_t g = 0; g < d.num_groups(); ++g) {
        for (auto c : kAllCompartments) {
            if (!std::isfinite(d(g, c))) {
                throw IntegrationError("non-finite derivative on day " + std::to_string(static_cast<int>(std::floor(t))) +
                                       " in group " + std::to_string(g) + " compartment " +
                                       std::string(compartment_code(c)));
            }
        }
    }
}

CompartmentTensor axpy(const CompartmentTensor& y, double h, const CompartmentTensor& k)
{
    CompartmentTensor out = y;
    auto o  = out.values();
    auto kv = k.values();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] += h * kv[i];
    }
    return out;
}

} // namespace

StepResult step_rk4(const CompartmentTensor& state, const DerivativeFunction& derivative, double t, double dt)
{
    if (!(dt > 0)) {
        throw ValidationError("integration: dt must be > 0");
    }
    auto eval = [&](double time, const CompartmentTensor& y) {
        auto k = derivative(time, y);
        check_derivative(k, t);
        return k;
    };
    auto k1 = eval(t, state);
    auto k2 = eval(t + dt / 2, axpy(state, dt / 2, k1));
    auto k3 = eval(t + dt / 2, axpy(state, dt / 2, k2));
    auto k4 = eval(t + dt, axpy(state, dt, k3));

    StepResult result{state, 0.0};
    auto& next = result.state;
    for (std::size_t g = 0; g < state.num_groups(); ++g) {
        double clamped = 0.0;
        for (auto c : kAllCompartments) {
            double v = state(g, c) + dt / 6 * (k1(g, c) + 2 * k2(g, c) + 2 * k3(g, c) + k4(g, c));
            if (v < 0) {
                clamped -= v;
                v = 0;
            }
            next(g, c) = v;
        }
        if (clamped > kMaxClampedFraction * state.group_total(g)) {
            throw IntegrationError("negative mass " + std::to_string(clamped) + " clamped on day " +
                                   std::to_string(static_cast<int>(std::floor(t))) + " in group " +
                                   std::to_string(g) + " exceeds round-off tolerance");
        }
        result.clamped_mass += clamped;
    }
    return result;
}

int steps_per_day(double dt)
{
    if (!(dt > 0) || dt > 1) {
        throw ValidationError("integration: dt must be in (0, 1]");
    }
    auto n = std::llround(1.0 / dt);
    if (n < 1 || std::abs(static_cast<double>(n) * dt - 1.0) > 1e-12) {
        throw ValidationError("integration: dt must divide one day evenly");
    }
    return static_cast<int>(n);
}

CompartmentTensor advance_day(const CompartmentTensor& state, const EpiParameters& params,
                              const ContactMatrices& contacts, std::span<const Damping> dampings, int day, double dt)
{
    const int steps    = steps_per_day(dt);
    const auto mixing  = effective_contacts(contacts, dampings, day);
    DerivativeFunction f = [&](double, const CompartmentTensor& y) {
        return rhs(y, params, mixing);
    };
    CompartmentTensor y = state;
    for (int k = 0; k < steps; ++k) {
        y = step_rk4(y, f, day + k * dt, dt).state;
    }
    return y;
}

std::vector<CompartmentTensor> simulate_node(const CompartmentTensor& initial, const EpiParameters& params,
                                             const ContactMatrices& contacts, std::span<const Damping> dampings,
                                             int num_days, double dt)
{
    if (num_days < 1) {
        throw ValidationError("simulation: num_days must be >= 1");
    }
    steps_per_day(dt);
    check_tensor(initial, "initial state");
    if (params.size() != initial.num_groups()) {
        throw ValidationError("simulation: parameters must have one entry per age group");
    }
    validate_parameters(params);
    contacts.validate(initial.num_groups());
    for (const auto& d : dampings) {
        validate_damping(d, initial.num_groups());
    }

    std::vector<CompartmentTensor> trajectory;
    trajectory.reserve(static_cast<std::size_t>(num_days) + 1);
    trajectory.push_back(initial);
    for (int day = 0; day < num_days; ++day) {
        trajectory.push_back(advance_day(trajectory.back(), params, contacts, dampings, day, dt));
    }
    return trajectory;
}

} // namespace esid
