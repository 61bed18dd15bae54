exports.area = function(w, h) {
  return w * h;
};

exports.perimeter = function(w, h) {
  return 2 * (w + h);
};

exports.scale = function(w, k) {
  return w * k;
};

exports.rotate = function(angle, by) {
  return (angle + by) % 360;
};

exports.translate = function(x, dx) {
  return x + dx;
};
