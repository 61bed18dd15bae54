var scalar = require("./scalar");

function Vector(x, y) {
  this.x = x;
  this.y = y;
}

Vector.prototype.length = function() {
  return Math.sqrt(this.x * this.x + this.y * this.y);
};

Vector.prototype.scale = function(k) {
  return new Vector(this.x * k, this.y * k);
};

Vector.add = function(a, b) {
  return new Vector(a.x + b.x, a.y + b.y);
};

Vector.dot = function(a, b) {
  return a.x * b.x + a.y * b.y;
};

Vector.angle = function(a, b) {
  var c = Vector.dot(a, b) / (a.length() * b.length());
  return Math.acos(scalar.clamp(c, -1, 1));
};

module.exports = Vector;
