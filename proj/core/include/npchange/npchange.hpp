#pragma once

#include <npchange/bandwidth.hpp>
#include <npchange/cusum.hpp>
#include <npchange/dgp.hpp>
#include <npchange/experiment.hpp>
#include <npchange/kernel.hpp>
#include <npchange/regression.hpp>
#include <npchange/segmentation.hpp>
#include <npchange/series.hpp>
#include <npchange/threshold.hpp>
#include <npchange/version.hpp>
