var EPSILON = 1e-9;

exports.clamp = function(x, lo, hi) {
  return x < lo ? lo : x > hi ? hi : x;
};

exports.nearlyEqual = function(a, b) {
  return Math.abs(a - b) < EPSILON;
};

exports.lerp = function(a, b, t) {
  return a + (b - a) * t;
};

exports.round = function(x, digits) {
  var f = Math.pow(10, digits);
  return Math.round(x * f) / f;
};
